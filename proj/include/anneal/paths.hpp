#pragma once

#include <span>
#include <vector>

#include "anneal/deformed.hpp"
#include "anneal/density.hpp"

namespace anneal {

// Normalized nonnegative mixing weights.
struct MixtureWeights {
    std::vector<double> beta;

    static MixtureWeights of(std::vector<double> beta);
    static MixtureWeights two_point(double beta) { return of({1.0 - beta, beta}); }
    std::size_t size() const { return beta.size(); }
};

enum class NormalizationPolicy { unnormalized, normalize_output };

// beta |-> density bridging two endpoints through a representation function.
struct AnnealingPath {
    Density p0;
    Density p1;
    RepresentationFn rho;
    NormalizationPolicy policy = NormalizationPolicy::unnormalized;
};

// Pointwise rho^{-1}(sum_i beta_i rho(pi_i(x))). Inputs share a support.
// Deformed kinds are evaluated as power means in log space, which keeps the
// result accurate where u^p underflows the unit offset of log_q.
Density quasi_arithmetic_mean(std::span<const Density> inputs,
                              const MixtureWeights& weights,
                              const RepresentationFn& rho);

// Scalar quasi-arithmetic mean of one support point.
double scalar_quasi_mean(std::span<const double> values,
                         std::span<const double> weights,
                         const RepresentationFn& rho);

AnnealingPath make_path(Density p0, Density p1, RepresentationFn rho,
                        NormalizationPolicy policy = NormalizationPolicy::unnormalized);

Density evaluate(const AnnealingPath& path, double beta);

// Mixing weight beta' for which the q-mixture of unnormalized endpoints,
// once normalized, matches the q-mixture of the normalized endpoints at beta.
double reparameterize_normalized_q_mixture(const Density& p0, const Density& p1,
                                           double beta, double q);

// The transient constant c = [(1-b) Z0^{-(1-q)} + b Z1^{-(1-q)}]^{-1/(1-q)}
// relating the two mixtures; exposed for inspection only.
double normalized_q_mixture_constant(const Density& p0, const Density& p1,
                                     double beta, double q);

// Exponential families with closed-form moment map eta and inverse.
enum class MomentFamily {
    gaussian_mean_variance,  // theta = (mu, sigma^2), eta = (E[x], E[x^2])
    bernoulli_logit          // theta = log-odds, eta = mean
};

std::vector<double> moment_map(MomentFamily fam, std::span<const double> theta);
std::vector<double> moment_map_inverse(MomentFamily fam, std::span<const double> eta);

// theta_beta = eta^{-1}((1-beta) eta(theta0) + beta eta(theta1)).
std::vector<double> moment_average_path(MomentFamily fam,
                                        std::span<const double> theta0,
                                        std::span<const double> theta1,
                                        double beta);

}  // namespace anneal
