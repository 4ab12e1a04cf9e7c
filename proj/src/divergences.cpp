#include "anneal/divergences.hpp"

#include <cmath>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

void check_shared_support(const Density& a, const Density& b) {
    if (!(a.support == b.support)) throw domain_error("densities must share a support");
}

double checked(double term, const char* what) {
    if (std::isnan(term)) throw domain_error(std::string("undefined term in ") + what);
    if (std::isinf(term)) throw overflow_error(std::string("non-finite term in ") + what);
    return term;
}

// x^e with the conventions 0^e = 0 for e > 0, 0^0 = 1; negative bases and
// 0 with negative exponent are domain errors.
double safe_pow(double x, double e) {
    if (x < 0.0) throw domain_error("power of negative density value");
    if (x == 0.0) {
        if (e > 0.0) return 0.0;
        if (e == 0.0) return 1.0;
        throw domain_error("negative power of zero density value");
    }
    return std::pow(x, e);
}

double xlogx_ratio(double x, double ref) {
    // x * log(x / ref), with the 0 log 0 convention.
    if (x == 0.0) return 0.0;
    if (ref == 0.0) throw domain_error("log of zero ratio");
    return x * std::log(x / ref);
}

}  // namespace

double rho_tau_bregman(const RhoTauPair& pair, const Density& a, const Density& b) {
    check_shared_support(a, b);
    const RepresentationFn& rho = pair.rho();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va = a.values[i];
        const double vb = b.values[i];
        if (std::isinf(va) || std::isinf(vb))
            throw overflow_error("saturated density value in rho_tau_bregman");
        if (va == vb) continue;
        if (!rho.accepts(va) || !rho.accepts(vb))
            throw domain_error("value outside rho domain in rho_tau_bregman");
        const double ra = rho.apply(va);
        const double rb = rho.apply(vb);
        const double term = pair.f(ra) - pair.f(rb) - (ra - rb) * pair.fprime(rb);
        acc += a.weights[i] * checked(term, "rho_tau_bregman");
    }
    return checked(acc, "rho_tau_bregman");
}

double dual_rho_tau_bregman(const RhoTauPair& pair, const Density& a, const Density& b) {
    check_shared_support(a, b);
    const RepresentationFn& rho = pair.rho();
    const RepresentationFn& tau = pair.tau();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va = a.values[i];
        const double vb = b.values[i];
        if (va == vb) continue;
        if (!rho.accepts(va) || !rho.accepts(vb) || !tau.accepts(va) || !tau.accepts(vb))
            throw domain_error("value outside domain in dual_rho_tau_bregman");
        // f*(tau(u)) = rho(u) tau(u) - f(rho(u)); (f*)'(tau(b)) = rho(b).
        const double ra = rho.apply(va), rb = rho.apply(vb);
        const double ta = tau.apply(va), tb = tau.apply(vb);
        const double term =
            (ra * ta - pair.f(ra)) - (rb * tb - pair.f(rb)) - (ta - tb) * rb;
        acc += a.weights[i] * checked(term, "dual_rho_tau_bregman");
    }
    return checked(acc, "dual_rho_tau_bregman");
}

double psi_f(const RhoTauPair& pair, const Density& d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!pair.rho().accepts(d.values[i]))
            throw domain_error("value outside rho domain in psi_f");
        acc += d.weights[i] * pair.f(pair.rho().apply(d.values[i]));
    }
    return checked(acc, "psi_f");
}

BregmanInfoResult bregman_information(const RhoTauPair& pair,
                                      std::span<const Density> inputs,
                                      const MixtureWeights& weights) {
    Density mean = quasi_arithmetic_mean(inputs, weights, pair.rho());
    const RepresentationFn& rho = pair.rho();
    BregmanInfoResult result;
    result.per_point_objective.resize(mean.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < mean.size(); ++j) {
        // Pointwise Jensen gap of f; nonnegative, so the sum does not cancel.
        double gap = -pair.f(rho.apply(mean.values[j]));
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            if (weights.beta[i] == 0.0) continue;
            gap += weights.beta[i] * pair.f(rho.apply(inputs[i].values[j]));
        }
        result.per_point_objective[j] = gap;
        acc += mean.weights[j] * checked(gap, "bregman_information");
    }
    result.value = acc;
    result.minimizer = std::move(mean);
    return result;
}

double suboptimality_gap(const RhoTauPair& pair, std::span<const Density> inputs,
                         const MixtureWeights& weights, const Density& mu) {
    const BregmanInfoResult info = bregman_information(pair, inputs, weights);
    double expected = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (weights.beta[i] == 0.0) continue;
        expected += weights.beta[i] * rho_tau_bregman(pair, inputs[i], mu);
    }
    return expected - info.value;
}

double scaled_divergence(const RhoTauPair& pair, const Density& p0,
                         const Density& p1, double beta) {
    if (beta < 0.0 || beta > 1.0) throw domain_error("beta must lie in [0, 1]");
    // Limit branches continue the interior formula: expanding the Jensen gap
    // gives BI(beta)/beta -> D_f[rho(p1):rho(p0)] as beta -> 0 and the
    // reversed order as beta -> 1.
    if (beta < kScaledLimitEps) return rho_tau_bregman(pair, p1, p0);
    if (1.0 - beta < kScaledLimitEps) return rho_tau_bregman(pair, p0, p1);
    const Density endpoints[2] = {p0, p1};
    const auto info =
        bregman_information(pair, endpoints, MixtureWeights::two_point(beta));
    return info.value / (beta * (1.0 - beta));
}

double itakura_saito(const Density& a, const Density& b) {
    check_shared_support(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va = a.values[i], vb = b.values[i];
        if (!(va > 0.0) || !(vb > 0.0))
            throw domain_error("itakura-saito needs strictly positive values");
        const double r = va / vb;
        acc += a.weights[i] * (r - std::log(r) - 1.0);
    }
    return checked(acc, "itakura_saito");
}

namespace {

double kl_unnormalized(const Density& a, const Density& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va = a.values[i], vb = b.values[i];
        acc += a.weights[i] * (xlogx_ratio(va, vb) - va + vb);
    }
    return checked(acc, "kl_unnormalized");
}

double kl_normalized(const Density& a, const Density& b,
                     DivergenceDiagnostics* diag) {
    const Density an = normalize(a);
    const Density bn = normalize(b);
    if (diag) {
        diag->mass_a = integral(a);
        diag->mass_b = integral(b);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += an.weights[i] * xlogx_ratio(an.values[i], bn.values[i]);
    return checked(acc, "kl_normalized");
}

double amari_alpha(double alpha, const Density& a, const Density& b) {
    if (alpha == 0.0) return kl_unnormalized(a, b);
    if (alpha == 1.0) return kl_unnormalized(b, a);
    double cross = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        cross += a.weights[i] * safe_pow(a.values[i], 1.0 - alpha) *
                 safe_pow(b.values[i], alpha);
    const double term = integral(a) / alpha + integral(b) / (1.0 - alpha) -
                        cross / (alpha * (1.0 - alpha));
    return checked(term, "amari_alpha");
}

double renyi(double alpha, const Density& a, const Density& b,
             DivergenceDiagnostics* diag) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw domain_error("renyi order must be in (0,1)");
    const Density an = normalize(a);
    const Density bn = normalize(b);
    if (diag) {
        diag->mass_a = integral(a);
        diag->mass_b = integral(b);
    }
    double cross = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        cross += an.weights[i] * safe_pow(an.values[i], 1.0 - alpha) *
                 safe_pow(bn.values[i], alpha);
    if (!(cross > 0.0)) throw domain_error("renyi cross integral vanished");
    return checked(-std::log(cross) / (alpha * (1.0 - alpha)), "renyi");
}

double jensen_shannon(double beta, const Density& a, const Density& b) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw domain_error("jensen-shannon weight must be in (0,1)");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va = a.values[i], vb = b.values[i];
        const double m = (1.0 - beta) * va + beta * vb;
        acc += a.weights[i] *
               ((1.0 - beta) * xlogx_ratio(va, m) + beta * xlogx_ratio(vb, m));
    }
    return checked(acc, "jensen_shannon");
}

double beta_divergence(double order, const Density& a, const Density& b) {
    if (std::isnan(order) || order < 0.0 || order > 2.0)
        throw domain_error("beta order must be in [0, 2]");
    if (order == 0.0) return itakura_saito(a, b);
    if (order == 2.0) {
        // Dedicated closed form: half squared L2.
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double dlt = a.values[i] - b.values[i];
            acc += a.weights[i] * 0.5 * dlt * dlt;
        }
        return acc;
    }
    if (std::abs(order - 1.0) < kQLimitEps) return kl_unnormalized(a, b);
    const double s = order;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va = a.values[i], vb = b.values[i];
        const double term = safe_pow(va, s) / (s * (s - 1.0)) + safe_pow(vb, s) / s -
                            va * safe_pow(vb, s - 1.0) / (s - 1.0);
        acc += a.weights[i] * checked(term, "beta_divergence");
    }
    return checked(acc, "beta_divergence");
}

double cichocki_amari(double q, double lambda, const Density& a, const Density& b) {
    const double p = 1.0 - q;   // exponent on the first argument
    const double s = 1.0 - lambda;  // exponent on the second argument
    if (std::abs(p) < 1e-12 || std::abs(s) < 1e-12 || std::abs(p + s) < 1e-12)
        throw domain_error("cichocki-amari parameters hit a singular limit (q=1, lambda=1, q+lambda=2)");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va = a.values[i], vb = b.values[i];
        const double term = p * safe_pow(va, p + s) + s * safe_pow(vb, p + s) -
                            (p + s) * safe_pow(va, p) * safe_pow(vb, s);
        acc += a.weights[i] * checked(term, "cichocki_amari");
    }
    return checked(acc / (p * s * (p + s)), "cichocki_amari");
}

double zhang_ab(double beta, double q, const Density& a, const Density& b) {
    if (!(beta > 0.0) || !(beta < 1.0)) throw domain_error("zhang beta must be in (0,1)");
    if (q == 0.0) throw domain_error("zhang q must be nonzero");
    const RepresentationFn rho = RepresentationFn::log_q(q);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va = a.values[i], vb = b.values[i];
        double mix;
        if (va == vb) {
            mix = va;
        } else {
            const double vals[2] = {va, vb};
            const double ws[2] = {1.0 - beta, beta};
            mix = scalar_quasi_mean(vals, ws, rho);
        }
        const double term = (1.0 - beta) * va + beta * vb - mix;
        acc += a.weights[i] * checked(term, "zhang_ab");
    }
    return checked(acc / (beta * (1.0 - beta) * q), "zhang_ab");
}

}  // namespace

double named_divergence(const DivergenceKind& kind, const Density& a, const Density& b,
                        DivergenceDiagnostics* diag) {
    check_shared_support(a, b);
    if (diag) {
        diag->mass_a = integral(a);
        diag->mass_b = integral(b);
        diag->support = a.support;
    }
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, KLUnnormalized>) {
                return kl_unnormalized(a, b);
            } else if constexpr (std::is_same_v<T, KLNormalized>) {
                return kl_normalized(a, b, diag);
            } else if constexpr (std::is_same_v<T, AmariAlpha>) {
                return amari_alpha(k.alpha, a, b);
            } else if constexpr (std::is_same_v<T, Renyi>) {
                return renyi(k.alpha, a, b, diag);
            } else if constexpr (std::is_same_v<T, JensenShannon>) {
                return jensen_shannon(k.beta, a, b);
            } else if constexpr (std::is_same_v<T, BetaDivergence>) {
                return beta_divergence(k.order, a, b);
            } else if constexpr (std::is_same_v<T, CichockiAmari>) {
                return cichocki_amari(k.q, k.lambda, a, b);
            } else if constexpr (std::is_same_v<T, ZhangAB>) {
                return zhang_ab(k.beta, k.q, a, b);
            } else {
                return rho_tau_bregman(k.pair, a, b);
            }
        },
        kind);
}

std::string kind_name(const DivergenceKind& kind) {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, KLUnnormalized>) return "kl_unnormalized";
            else if constexpr (std::is_same_v<T, KLNormalized>) return "kl_normalized";
            else if constexpr (std::is_same_v<T, AmariAlpha>) return "amari_alpha";
            else if constexpr (std::is_same_v<T, Renyi>) return "renyi";
            else if constexpr (std::is_same_v<T, JensenShannon>) return "jensen_shannon";
            else if constexpr (std::is_same_v<T, BetaDivergence>) return "beta";
            else if constexpr (std::is_same_v<T, CichockiAmari>) return "cichocki_amari";
            else if constexpr (std::is_same_v<T, ZhangAB>) return "zhang_ab";
            else return "rho_tau_generic";
        },
        kind);
}

std::vector<std::pair<std::string, double>> kind_params(const DivergenceKind& kind) {
    return std::visit(
        [](const auto& k) -> std::vector<std::pair<std::string, double>> {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, AmariAlpha>) return {{"alpha", k.alpha}};
            else if constexpr (std::is_same_v<T, Renyi>) return {{"alpha", k.alpha}};
            else if constexpr (std::is_same_v<T, JensenShannon>) return {{"beta", k.beta}};
            else if constexpr (std::is_same_v<T, BetaDivergence>) return {{"order", k.order}};
            else if constexpr (std::is_same_v<T, CichockiAmari>)
                return {{"q", k.q}, {"lambda", k.lambda}};
            else if constexpr (std::is_same_v<T, ZhangAB>)
                return {{"beta", k.beta}, {"q", k.q}};
            else return {};
        },
        kind);
}

}  // namespace anneal
