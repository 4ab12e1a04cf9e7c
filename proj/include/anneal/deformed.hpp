#pragma once

#include <functional>
#include <limits>
#include <string>

namespace anneal {

// Threshold below which |1-q| is treated as the q->1 limit. Power forms go
// through expm1/log1p, so accuracy is kept on both sides of the switch.
inline constexpr double kQLimitEps = 1e-8;

// log_q(u) = (u^{1-q} - 1) / (1-q), natural log in the q->1 limit.
double q_log(double u, double q);

// exp_q(t) = [1 + (1-q) t]_+^{1/(1-q)}, exp in the q->1 limit.
// Total function: the clipped branch returns 0 (for q > 1 as well, taking the
// inverse's value on the valid branch); large results saturate to +inf.
double q_exp(double t, double q);

enum class RepKind { identity, log, log_q, log_one_minus_lambda };

// Strictly monotone scalar embedding with inverse and first two derivatives.
// Kinds follow one power family: log_q has exponent p = 1-q,
// log_{1-lambda} has exponent p = lambda, log is p = 0. An optional affine
// gauge (c, a) scales the output; quasi-arithmetic means are invariant to it.
class RepresentationFn {
public:
    RepresentationFn() : RepresentationFn(RepKind::identity, 0.0, 1.0) {}

    static RepresentationFn identity();
    static RepresentationFn log();
    static RepresentationFn log_q(double q);
    static RepresentationFn log_one_minus_lambda(double lambda);

    // c * rho(u) + a with c > 0.
    RepresentationFn affine(double c, double a) const;

    double apply(double u) const;
    double operator()(double u) const { return apply(u); }
    double inverse(double y) const;
    double d1(double u) const;
    double d2(double u) const;

    bool accepts(double u) const;
    // Least admissible input value (0 or -inf); log-like kinds with p <= 0
    // exclude 0 itself.
    double domain_min() const;
    bool domain_open_at_zero() const;

    RepKind kind() const { return kind_; }
    double param() const { return param_; }
    // Power exponent p of the deformed family; identity has none.
    double exponent() const { return exponent_; }
    bool is_identity() const { return kind_ == RepKind::identity; }
    bool has_affine_gauge() const { return scale_ != 1.0 || shift_ != 0.0; }
    double gauge_scale() const { return scale_; }
    double gauge_shift() const { return shift_; }

    std::string describe() const;

    bool operator==(const RepresentationFn&) const = default;

private:
    RepresentationFn(RepKind kind, double param, double exponent)
        : kind_(kind), param_(param), exponent_(exponent) {}

    RepKind kind_;
    double param_;     // q or lambda; unused for identity/log
    double exponent_;  // p
    double scale_ = 1.0;
    double shift_ = 0.0;
};

// Conjugate triple (rho, tau, f) with f' = tau o rho^{-1}. The convex f is
// stored on the rho scale; f* is recovered from the Young equality at
// matched points, which makes the conjugacy identities exact.
class RhoTauPair {
public:
    RhoTauPair(RepresentationFn rho, RepresentationFn tau,
               std::function<double(double)> f, bool closed_form)
        : rho_(std::move(rho)), tau_(std::move(tau)), f_(std::move(f)),
          closed_form_(closed_form) {}

    const RepresentationFn& rho() const { return rho_; }
    const RepresentationFn& tau() const { return tau_; }

    double f(double v) const { return f_(v); }
    double fprime(double v) const { return tau_.apply(rho_.inverse(v)); }
    // f*(t) = rho(u_t) * t - f(rho(u_t)) with u_t = tau^{-1}(t).
    double fstar(double t) const;
    double fstar_prime(double t) const { return rho_.apply(tau_.inverse(t)); }

    bool closed_form() const { return closed_form_; }

private:
    RepresentationFn rho_;
    RepresentationFn tau_;
    std::function<double(double)> f_;
    bool closed_form_;
};

// Builds the conjugate triple. Catalog (rho, tau) kind combinations get a
// closed-form f; anything else (e.g. affine-gauged representations) falls
// back to adaptive-Simpson integration of f' from the anchor rho(1).
RhoTauPair make_pair(const RepresentationFn& rho, const RepresentationFn& tau);

// Forces the numerical-integration construction; used as a cross-check
// against the catalog.
RhoTauPair make_pair_numeric(const RepresentationFn& rho,
                             const RepresentationFn& tau);

// Dual triple (tau, rho, f*).
RhoTauPair dual_pair(const RhoTauPair& pair);

// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& g, double a,
                        double b, double tol);

}  // namespace anneal
