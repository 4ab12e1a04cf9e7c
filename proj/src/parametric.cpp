#include "anneal/parametric.hpp"

#include <cmath>
#include <limits>

#include "anneal/deformed.hpp"
#include "anneal/errors.hpp"

namespace anneal {

QExpFamily make_lr_family(const Density& p0, const Density& p1, double q) {
    if (!(p0.support == p1.support)) throw domain_error("endpoints must share a support");
    std::vector<double> stat(p0.size(), 0.0);
    for (std::size_t i = 0; i < p0.size(); ++i) {
        const double v0 = p0.values[i], v1 = p1.values[i];
        if (v0 == 0.0) {
            if (v1 != 0.0)
                throw domain_error("absolute continuity violated: p0 = 0 < p1 at x index " +
                                   std::to_string(i));
            stat[i] = 0.0;  // 0 * exp_q(anything) = 0; the statistic is moot here
        } else if (v1 == 0.0) {
            // log_q(0): finite boundary for q < 1, -inf otherwise.
            stat[i] = 1.0 - q > kQLimitEps ? -1.0 / (1.0 - q)
                                           : -std::numeric_limits<double>::infinity();
        } else {
            stat[i] = q_log(v1 / v0, q);
        }
    }
    QExpFamily fam;
    fam.q = q;
    fam.base = p0;
    fam.suffstats.push_back(std::move(stat));
    fam.theta_domain.push_back({0.0, 1.0});
    return fam;
}

void check_theta(const QExpFamily& fam, std::span<const double> theta) {
    if (theta.size() != fam.dim())
        throw domain_error("theta dimension does not match the family");
    for (std::size_t j = 0; j < theta.size(); ++j) {
        if (theta[j] < fam.theta_domain[j].first || theta[j] > fam.theta_domain[j].second)
            throw domain_error("theta outside the family's box domain");
    }
}

namespace {

double dot_stats(const QExpFamily& fam, std::span<const double> theta, std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < fam.dim(); ++j) {
        if (theta[j] == 0.0) continue;  // keeps 0 * (-inf) out of the dot product
        acc += theta[j] * fam.suffstats[j][i];
    }
    return acc;
}

}  // namespace

Density unnormalized_density(const QExpFamily& fam, std::span<const double> theta) {
    check_theta(fam, theta);
    std::vector<double> values(fam.base.size());
    for (std::size_t i = 0; i < fam.base.size(); ++i) {
        const double g = fam.base.values[i];
        values[i] = g == 0.0 ? 0.0 : g * q_exp(dot_stats(fam, theta, i), fam.q);
    }
    Density d{fam.base.support, std::move(values), fam.base.weights};
    return d;
}

double z_q(const QExpFamily& fam, std::span<const double> theta) {
    const Density d = unnormalized_density(fam, theta);
    const double mass = integral(d);
    if (!std::isfinite(mass) || !(mass > 0.0))
        throw overflow_error("Z_q is not finite and positive");
    return mass;
}

std::vector<double> z_q_gradient(const QExpFamily& fam, std::span<const double> theta) {
    const Density d = unnormalized_density(fam, theta);
    std::vector<double> grad(fam.dim(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double g = fam.base.values[i];
        const double pi = d.values[i];
        if (g == 0.0 || pi == 0.0) continue;
        const double factor = std::pow(g, 1.0 - fam.q) * std::pow(pi, fam.q) * d.weights[i];
        for (std::size_t j = 0; j < fam.dim(); ++j) grad[j] += factor * fam.suffstats[j][i];
    }
    for (double gj : grad) {
        if (!std::isfinite(gj)) throw overflow_error("Z_q gradient is not finite");
    }
    return grad;
}

double parametric_bregman(const QExpFamily& fam, std::span<const double> theta_a,
                          std::span<const double> theta_b, ParametricGenerator gen) {
    check_theta(fam, theta_a);
    check_theta(fam, theta_b);
    const double za = z_q(fam, theta_a);
    const double zb = z_q(fam, theta_b);
    std::vector<double> grad = z_q_gradient(fam, theta_b);

    double value, ga, gb;
    if (gen == ParametricGenerator::scaled_zq) {
        if (fam.q == 0.0) throw domain_error("scaled Z_q generator needs q != 0");
        ga = za / fam.q;
        gb = zb / fam.q;
        for (double& gj : grad) gj /= fam.q;
    } else {
        ga = std::log(za);
        gb = std::log(zb);
        for (double& gj : grad) gj /= zb;
    }
    value = ga - gb;
    for (std::size_t j = 0; j < fam.dim(); ++j)
        value -= grad[j] * (theta_a[j] - theta_b[j]);
    if (!std::isfinite(value)) throw overflow_error("parametric Bregman value is not finite");
    return value;
}

Density unnormalized_density(const QExpFamily& fam, double beta) {
    return unnormalized_density(fam, std::span<const double>(&beta, 1));
}

double z_q(const QExpFamily& fam, double beta) {
    return z_q(fam, std::span<const double>(&beta, 1));
}

double parametric_bregman(const QExpFamily& fam, double beta_a, double beta_b,
                          ParametricGenerator gen) {
    return parametric_bregman(fam, std::span<const double>(&beta_a, 1),
                              std::span<const double>(&beta_b, 1), gen);
}

}  // namespace anneal
