#include "anneal/deformed.hpp"

#include <cmath>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (u^p - 1)/p through expm1, stable down to the p->0 switch.
double power_log(double u, double p) {
    if (u < 0.0) throw domain_error("deformed log of negative value");
    if (std::abs(p) < kQLimitEps) {
        if (u == 0.0) throw domain_error("log of zero");
        return std::log(u);
    }
    if (u == 0.0) {
        if (p > 0.0) return -1.0 / p;
        throw domain_error("deformed log of zero for nonpositive exponent");
    }
    return std::expm1(p * std::log(u)) / p;
}

// Inverse of power_log; clipped branch returns 0.
double power_exp(double y, double p) {
    if (std::abs(p) < kQLimitEps) return std::exp(y);
    const double t = p * y;
    if (1.0 + t <= 0.0) return 0.0;
    return std::exp(std::log1p(t) / p);
}

}  // namespace

double q_log(double u, double q) {
    if (u <= 0.0) throw domain_error("q_log requires u > 0");
    return power_log(u, 1.0 - q);
}

double q_exp(double t, double q) { return power_exp(t, 1.0 - q); }

RepresentationFn RepresentationFn::identity() {
    return RepresentationFn(RepKind::identity, 0.0, 1.0);
}

RepresentationFn RepresentationFn::log() {
    return RepresentationFn(RepKind::log, 0.0, 0.0);
}

RepresentationFn RepresentationFn::log_q(double q) {
    return RepresentationFn(RepKind::log_q, q, 1.0 - q);
}

RepresentationFn RepresentationFn::log_one_minus_lambda(double lambda) {
    return RepresentationFn(RepKind::log_one_minus_lambda, lambda, lambda);
}

RepresentationFn RepresentationFn::affine(double c, double a) const {
    if (!(c > 0.0)) throw domain_error("affine gauge needs c > 0");
    RepresentationFn out = *this;
    out.scale_ = scale_ * c;
    out.shift_ = c * shift_ + a;
    return out;
}

double RepresentationFn::apply(double u) const {
    double base;
    if (kind_ == RepKind::identity) {
        base = u;
    } else {
        base = power_log(u, exponent_);
    }
    return scale_ * base + shift_;
}

double RepresentationFn::inverse(double y) const {
    const double base = (y - shift_) / scale_;
    if (kind_ == RepKind::identity) return base;
    return power_exp(base, exponent_);
}

double RepresentationFn::d1(double u) const {
    if (kind_ == RepKind::identity) return scale_;
    if (u < 0.0 || (u == 0.0 && exponent_ < 1.0))
        throw domain_error("representation derivative outside domain");
    if (std::abs(exponent_) < kQLimitEps) return scale_ / u;
    return scale_ * std::pow(u, exponent_ - 1.0);
}

double RepresentationFn::d2(double u) const {
    if (kind_ == RepKind::identity) return 0.0;
    if (u <= 0.0) throw domain_error("representation derivative outside domain");
    if (std::abs(exponent_) < kQLimitEps) return -scale_ / (u * u);
    return scale_ * (exponent_ - 1.0) * std::pow(u, exponent_ - 2.0);
}

bool RepresentationFn::accepts(double u) const {
    if (!std::isfinite(u)) return false;
    if (kind_ == RepKind::identity) return true;
    if (std::abs(exponent_) < kQLimitEps || exponent_ < 0.0) return u > 0.0;
    return u >= 0.0;
}

double RepresentationFn::domain_min() const {
    return kind_ == RepKind::identity ? -kInf : 0.0;
}

bool RepresentationFn::domain_open_at_zero() const {
    if (kind_ == RepKind::identity) return false;
    return std::abs(exponent_) < kQLimitEps || exponent_ < 0.0;
}

std::string RepresentationFn::describe() const {
    std::string base;
    switch (kind_) {
        case RepKind::identity: base = "identity"; break;
        case RepKind::log: base = "log"; break;
        case RepKind::log_q: base = "log_q(" + std::to_string(param_) + ")"; break;
        case RepKind::log_one_minus_lambda:
            base = "log_{1-" + std::to_string(param_) + "}";
            break;
    }
    if (has_affine_gauge()) {
        base += " [gauge " + std::to_string(scale_) + "*.+" + std::to_string(shift_) + "]";
    }
    return base;
}

double RhoTauPair::fstar(double t) const {
    const double u = tau_.inverse(t);
    const double v = rho_.apply(u);
    return v * t - f_(v);
}

namespace {

// Closed-form antiderivatives of f' = tau o rho^{-1} on the rho scale.
// p is rho's exponent (p = 0 means log), s is tau's (tau may be identity).
// Anchored so f(rho(1)) = 0 except for the identity/identity pair, which
// keeps the usual rho^2/2.

std::function<double(double)> catalog_f(const RepresentationFn& rho,
                                        const RepresentationFn& tau,
                                        bool& ok) {
    ok = true;
    const bool rho_id = rho.is_identity();
    const bool tau_id = tau.is_identity();
    const double p = rho.exponent();
    const double s = tau.exponent();
    const bool rho_log = !rho_id && std::abs(p) < kQLimitEps;
    const bool tau_log = !tau_id && std::abs(s) < kQLimitEps;

    if (rho_id && tau_id) {
        return [](double v) { return 0.5 * v * v; };
    }
    if (rho_id && tau_log) {
        // f' = ln v
        return [](double v) {
            if (v < 0.0) throw domain_error("generator needs v >= 0");
            if (v == 0.0) return 1.0;
            return v * std::log(v) - v + 1.0;
        };
    }
    if (rho_id && !tau_id && !tau_log) {
        // f' = (v^s - 1)/s
        if (std::abs(s + 1.0) < kQLimitEps) {
            return [s](double v) {
                if (v <= 0.0) throw domain_error("generator needs v > 0");
                return (std::log(v) - (v - 1.0)) / s;
            };
        }
        return [s](double v) {
            if (v < 0.0) throw domain_error("generator needs v >= 0");
            const double pw = v == 0.0 ? 0.0 : std::pow(v, s + 1.0);
            return pw / (s * (s + 1.0)) - v / s + 1.0 / (s + 1.0);
        };
    }

    if (rho_log) {
        if (tau_id) {
            // f' = e^v
            return [](double v) { return std::expm1(v); };
        }
        if (tau_log) {
            return [](double v) { return 0.5 * v * v; };
        }
        // f' = (e^{s v} - 1)/s
        return [s](double v) {
            return std::expm1(s * v) / (s * s) - v / s;
        };
    }

    // rho deformed with exponent p; w = 1 + p v = u^p.
    auto w_of = [p](double v) {
        const double w = 1.0 + p * v;
        if (w < 0.0) throw domain_error("generator argument outside exp_q branch");
        return w;
    };
    if (tau_id) {
        if (std::abs(1.0 + p) < kQLimitEps) {
            // q = 2: f' = 1/(1 - v)
            return [w_of](double v) {
                const double w = w_of(v);
                if (w == 0.0) throw domain_error("generator singular at branch edge");
                return -std::log(w);
            };
        }
        return [p, w_of](double v) {
            const double w = w_of(v);
            const double e = (1.0 + p) / p;
            const double pw = w == 0.0 ? (e > 0.0 ? 0.0 : kInf) : std::pow(w, e);
            return (pw - 1.0) / (1.0 + p);
        };
    }
    if (tau_log) {
        // f' = ln(w)/p
        return [p, w_of](double v) {
            const double w = w_of(v);
            const double wlw = w == 0.0 ? 0.0 : w * std::log(w);
            return (wlw - w + 1.0) / (p * p);
        };
    }
    // General deformed pair.
    if (std::abs(s + p) < kQLimitEps) {
        return [p, s, w_of](double v) {
            const double w = w_of(v);
            if (w == 0.0) throw domain_error("generator singular at branch edge");
            return (std::log(w) / p - v) / s;
        };
    }
    return [p, s, w_of](double v) {
        const double w = w_of(v);
        const double e = (s + p) / p;
        const double pw = w == 0.0 ? (e > 0.0 ? 0.0 : kInf) : std::pow(w, e);
        if (!std::isfinite(pw)) throw domain_error("generator singular at branch edge");
        return (pw / (s + p) - v) / s - 1.0 / (s * (s + p));
    };
}

}  // namespace

RhoTauPair make_pair_numeric(const RepresentationFn& rho,
                             const RepresentationFn& tau) {
    auto fprime = [rho, tau](double v) { return tau.apply(rho.inverse(v)); };
    const double anchor = rho.apply(1.0);
    auto f = [fprime, anchor](double v) {
        if (v == anchor) return 0.0;
        return adaptive_simpson(fprime, anchor, v, 1e-12);
    };
    return RhoTauPair(rho, tau, f, false);
}

RhoTauPair make_pair(const RepresentationFn& rho, const RepresentationFn& tau) {
    if (rho.has_affine_gauge() || tau.has_affine_gauge()) {
        return make_pair_numeric(rho, tau);
    }
    bool ok = false;
    auto f = catalog_f(rho, tau, ok);
    if (!ok) return make_pair_numeric(rho, tau);
    return RhoTauPair(rho, tau, std::move(f), true);
}

RhoTauPair dual_pair(const RhoTauPair& pair) {
    return make_pair(pair.tau(), pair.rho());
}

namespace {

double simpson_rec(const std::function<double(double)>& g, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& g, double a,
                        double b, double tol) {
    if (a == b) return 0.0;
    const double fa = g(a);
    const double fb = g(b);
    const double m = 0.5 * (a + b);
    const double fm = g(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(g, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace anneal
