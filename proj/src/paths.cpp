#include "anneal/paths.hpp"

#include <cmath>
#include <limits>

#include "anneal/errors.hpp"

namespace anneal {

MixtureWeights MixtureWeights::of(std::vector<double> beta) {
    if (beta.empty()) throw domain_error("mixture weights must be nonempty");
    double sum = 0.0;
    for (double b : beta) {
        if (std::isnan(b) || b < 0.0) throw domain_error("mixture weights must be >= 0");
        sum += b;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw domain_error("mixture weights must sum to 1");
    return MixtureWeights{std::move(beta)};
}

double scalar_quasi_mean(std::span<const double> values,
                         std::span<const double> weights,
                         const RepresentationFn& rho) {
    for (double v : values) {
        if (!rho.accepts(v))
            throw domain_error("density value outside representation domain");
    }
    if (rho.is_identity()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (weights[i] != 0.0) acc += weights[i] * values[i];
        return acc;
    }
    const double p = rho.exponent();
    if (std::abs(p) < kQLimitEps) {  // geometric mean in log space
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (weights[i] != 0.0) acc += weights[i] * std::log(values[i]);
        return std::exp(acc);
    }
    // Power mean via log-sum-exp over ln(beta_i) + p ln(u_i); exact algebra
    // for the log_q representation and immune to the u^p - 1 cancellation.
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] == 0.0 || values[i] == 0.0) continue;
        m = std::max(m, std::log(weights[i]) + p * std::log(values[i]));
    }
    if (std::isinf(m) && m < 0.0) return 0.0;  // every contribution clipped
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] == 0.0 || values[i] == 0.0) continue;
        acc += std::exp(std::log(weights[i]) + p * std::log(values[i]) - m);
    }
    return std::exp((m + std::log(acc)) / p);
}

Density quasi_arithmetic_mean(std::span<const Density> inputs,
                              const MixtureWeights& weights,
                              const RepresentationFn& rho) {
    if (inputs.empty() || inputs.size() != weights.size())
        throw domain_error("inputs and weights must match and be nonempty");
    const Support& support = inputs.front().support;
    for (const Density& d : inputs) {
        if (!(d.support == support)) throw domain_error("inputs must share a support");
    }
    // Degenerate weights select an input exactly.
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights.beta[i] == 1.0) return inputs[i];
    }

    const std::size_t n = support.n;
    std::vector<double> out(n, 0.0);
    std::vector<double> point(inputs.size());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < inputs.size(); ++i) point[i] = inputs[i].values[j];
        try {
            out[j] = scalar_quasi_mean(point, weights.beta, rho);
        } catch (const domain_error& e) {
            throw domain_error(std::string(e.what()) + " at x index " + std::to_string(j));
        }
    }
    Density d{support, std::move(out), inputs.front().weights};
    return d;
}

AnnealingPath make_path(Density p0, Density p1, RepresentationFn rho,
                        NormalizationPolicy policy) {
    if (!(p0.support == p1.support)) throw domain_error("endpoints must share a support");
    for (std::size_t j = 0; j < p0.size(); ++j) {
        if (!rho.accepts(p0.values[j]) || !rho.accepts(p1.values[j]))
            throw domain_error("endpoint value outside representation domain at x index " +
                               std::to_string(j));
    }
    return AnnealingPath{std::move(p0), std::move(p1), std::move(rho), policy};
}

Density evaluate(const AnnealingPath& path, double beta) {
    if (beta < 0.0 || beta > 1.0) throw domain_error("beta must lie in [0, 1]");
    Density out;
    if (beta == 0.0 || path.p0.values == path.p1.values) {
        out = path.p0;
    } else if (beta == 1.0) {
        out = path.p1;
    } else {
        const Density endpoints[2] = {path.p0, path.p1};
        out = quasi_arithmetic_mean(endpoints, MixtureWeights::two_point(beta), path.rho);
    }
    if (path.policy == NormalizationPolicy::normalize_output) out = normalize(out);
    return out;
}

double reparameterize_normalized_q_mixture(const Density& p0, const Density& p1,
                                           double beta, double q) {
    if (beta < 0.0 || beta > 1.0) throw domain_error("beta must lie in [0, 1]");
    const double z0 = integral(p0);
    const double z1 = integral(p1);
    if (!(z0 > 0.0) || !(z1 > 0.0) || !std::isfinite(z0) || !std::isfinite(z1))
        throw overflow_error("endpoint masses must be finite and positive");
    if (std::abs(1.0 - q) < kQLimitEps) return beta;
    const double w0 = (1.0 - beta) * std::pow(z0, q - 1.0);
    const double w1 = beta * std::pow(z1, q - 1.0);
    return w1 / (w0 + w1);
}

double normalized_q_mixture_constant(const Density& p0, const Density& p1,
                                     double beta, double q) {
    const double z0 = integral(p0);
    const double z1 = integral(p1);
    if (!(z0 > 0.0) || !(z1 > 0.0)) throw overflow_error("endpoint masses must be positive");
    if (std::abs(1.0 - q) < kQLimitEps) return std::pow(z0, 1.0 - beta) * std::pow(z1, beta);
    const double p = 1.0 - q;
    const double mean = (1.0 - beta) * std::pow(z0, -p) + beta * std::pow(z1, -p);
    return std::pow(mean, -1.0 / p);
}

std::vector<double> moment_map(MomentFamily fam, std::span<const double> theta) {
    switch (fam) {
        case MomentFamily::gaussian_mean_variance: {
            if (theta.size() != 2) throw domain_error("gaussian theta is (mu, sigma^2)");
            const double mu = theta[0], var = theta[1];
            if (!(var > 0.0)) throw domain_error("gaussian variance must be > 0");
            return {mu, mu * mu + var};
        }
        case MomentFamily::bernoulli_logit: {
            if (theta.size() != 1) throw domain_error("bernoulli theta is a scalar logit");
            return {1.0 / (1.0 + std::exp(-theta[0]))};
        }
    }
    throw domain_error("unknown moment family");
}

std::vector<double> moment_map_inverse(MomentFamily fam, std::span<const double> eta) {
    switch (fam) {
        case MomentFamily::gaussian_mean_variance: {
            if (eta.size() != 2) throw domain_error("gaussian eta is (E[x], E[x^2])");
            const double var = eta[1] - eta[0] * eta[0];
            if (!(var > 0.0)) throw domain_error("moment vector outside the gaussian mean domain");
            return {eta[0], var};
        }
        case MomentFamily::bernoulli_logit: {
            if (eta.size() != 1) throw domain_error("bernoulli eta is a scalar mean");
            const double p = eta[0];
            if (!(p > 0.0) || !(p < 1.0))
                throw domain_error("moment outside the bernoulli mean domain");
            return {std::log(p / (1.0 - p))};
        }
    }
    throw domain_error("unknown moment family");
}

std::vector<double> moment_average_path(MomentFamily fam,
                                        std::span<const double> theta0,
                                        std::span<const double> theta1,
                                        double beta) {
    if (beta < 0.0 || beta > 1.0) throw domain_error("beta must lie in [0, 1]");
    const auto eta0 = moment_map(fam, theta0);
    const auto eta1 = moment_map(fam, theta1);
    std::vector<double> mixed(eta0.size());
    for (std::size_t i = 0; i < mixed.size(); ++i)
        mixed[i] = (1.0 - beta) * eta0[i] + beta * eta1[i];
    return moment_map_inverse(fam, mixed);
}

}  // namespace anneal
