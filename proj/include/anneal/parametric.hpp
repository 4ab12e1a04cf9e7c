#pragma once

#include <span>
#include <utility>
#include <vector>

#include "anneal/density.hpp"

namespace anneal {

// q-exponential family g(x) exp_q{<theta, T(x)>} with sufficient statistics
// tabulated on the base support. theta_domain is a per-coordinate box.
struct QExpFamily {
    double q = 1.0;
    Density base;
    std::vector<std::vector<double>> suffstats;  // [d][n]
    std::vector<std::pair<double, double>> theta_domain;

    std::size_t dim() const { return suffstats.size(); }
};

// One-parameter family over arbitrary endpoints with sufficient statistic
// log_q(p1/p0) and natural parameter beta. Requires p0 = 0 => p1 = 0.
QExpFamily make_lr_family(const Density& p0, const Density& p1, double q);

void check_theta(const QExpFamily& fam, std::span<const double> theta);

Density unnormalized_density(const QExpFamily& fam, std::span<const double> theta);
double z_q(const QExpFamily& fam, std::span<const double> theta);

// Closed-form gradient: dZ_q/dtheta_j = int g^{1-q} pi_theta^q T_j dx.
std::vector<double> z_q_gradient(const QExpFamily& fam, std::span<const double> theta);

enum class ParametricGenerator { scaled_zq, log_z };

// Bregman divergence on parameters for the generator (1/q) Z_q or log Z_q.
double parametric_bregman(const QExpFamily& fam, std::span<const double> theta_a,
                          std::span<const double> theta_b, ParametricGenerator gen);

// Scalar-parameter conveniences for likelihood-ratio families.
Density unnormalized_density(const QExpFamily& fam, double beta);
double z_q(const QExpFamily& fam, double beta);
double parametric_bregman(const QExpFamily& fam, double beta_a, double beta_b,
                          ParametricGenerator gen);

}  // namespace anneal
