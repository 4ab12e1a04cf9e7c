#include <cmath>

#include "anneal/divergences.hpp"
#include "anneal/errors.hpp"
#include "anneal/parametric.hpp"
#include "anneal/paths.hpp"
#include "anneal/rng.hpp"
#include "doctest.h"

using namespace anneal;

namespace {

struct GaussSetup {
    Density p0;
    Density p1;
};

GaussSetup gauss_endpoints(double scale1 = 1.0) {
    const Support grid = Support::grid(-10.0, 10.0, 2001);
    return {materialize({GaussianSpec{0.0, 1.0}, 1.0}, grid),
            materialize({GaussianSpec{1.0, 1.0}, scale1}, grid)};
}

// Test-side Bregman divergence of a scalar generator.
double bregman_of(const std::function<double(double)>& g,
                  const std::function<double(double)>& gprime, double a, double b) {
    return g(a) - g(b) - gprime(b) * (a - b);
}

}  // namespace

TEST_CASE("likelihood-ratio family endpoints") {
    const auto [p0, p1] = gauss_endpoints();
    for (double q : {0.5, 1.0, 2.0}) {
        const QExpFamily fam = make_lr_family(p0, p1, q);
        const Density at0 = unnormalized_density(fam, 0.0);
        CHECK(at0.values == p0.values);
        const Density at1 = unnormalized_density(fam, 1.0);
        for (std::size_t i = 0; i < p1.size(); ++i)
            CHECK(at1.values[i] == doctest::Approx(p1.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("lr family matches the q-path pointwise") {
    const auto [p0, p1] = gauss_endpoints(1.5);
    for (double q : {0.5, 1.0, 2.0}) {
        const QExpFamily fam = make_lr_family(p0, p1, q);
        const AnnealingPath path = make_path(p0, p1, RepresentationFn::log_q(q));
        for (double beta : {0.2, 0.5, 0.8}) {
            const Density from_fam = unnormalized_density(fam, beta);
            const Density from_path = evaluate(path, beta);
            for (std::size_t i = 0; i < p0.size(); ++i)
                CHECK(std::abs(from_fam.values[i] - from_path.values[i]) <=
                      1e-10 * (1.0 + from_path.values[i]));
        }
    }
}

TEST_CASE("q=1 family with T=(x, x^2) reproduces a gaussian member") {
    const Support grid = Support::grid(-10.0, 10.0, 801);
    QExpFamily fam;
    fam.q = 1.0;
    fam.base = materialize({GaussianSpec{0.0, 1.0}, 1.0}, grid);
    std::vector<double> t1(grid.n), t2(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        t1[i] = grid.node(i);
        t2[i] = grid.node(i) * grid.node(i);
    }
    fam.suffstats = {t1, t2};
    fam.theta_domain = {{-1.0, 1.0}, {-0.4, 0.4}};

    // g(x) exp(t1 x + t2 x^2) is the gaussian with variance 1/(1 - 2 t2)
    // and mean t1 / (1 - 2 t2), up to a computable constant.
    const double theta[2] = {0.5, 0.2};
    const double var = 1.0 / (1.0 - 2.0 * theta[1]);
    const double mu = theta[0] * var;
    const double scale = std::sqrt(var) * std::exp(0.5 * mu * mu / var);
    const Density member = unnormalized_density(fam, theta);
    const Density want = materialize({GaussianSpec{mu, std::sqrt(var)}, scale}, grid);
    for (std::size_t i = 0; i < grid.n; ++i)
        CHECK(member.values[i] == doctest::Approx(want.values[i]).epsilon(1e-10));
}

TEST_CASE("geometric family density is the power mixture") {
    const auto [p0, p1] = gauss_endpoints();
    const QExpFamily fam = make_lr_family(p0, p1, 1.0);
    const Density mid = unnormalized_density(fam, 0.5);
    for (std::size_t i = 0; i < p0.size(); ++i) {
        const double want = std::sqrt(p0.values[i] * p1.values[i]);
        CHECK(mid.values[i] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("z_q values and convexity") {
    const auto [p0, p1] = gauss_endpoints();
    const QExpFamily fam = make_lr_family(p0, p1, 1.0);
    CHECK(z_q(fam, 0.0) == doctest::Approx(integral(p0)).epsilon(1e-14));
    // Geometric mixture of two unit gaussians one apart: Z(1/2) = exp(-1/8).
    CHECK(z_q(fam, 0.5) == doctest::Approx(std::exp(-0.125)).epsilon(1e-8));

    RngStream rng(12);
    for (double q : {0.5, 1.0, 2.0}) {
        const QExpFamily f = make_lr_family(p0, p1, q);
        for (int i = 0; i < 10; ++i) {
            const double ta = rng.uniform();
            const double tb = rng.uniform();
            const double mid = z_q(f, 0.5 * (ta + tb));
            CHECK(mid <= 0.5 * z_q(f, ta) + 0.5 * z_q(f, tb) + 1e-10);
        }
    }
}

TEST_CASE("z_q gradient matches central differences") {
    const auto [p0, p1] = gauss_endpoints(2.0);
    for (double q : {0.5, 1.0, 2.0}) {
        const QExpFamily fam = make_lr_family(p0, p1, q);
        for (double theta : {0.2, 0.5, 0.9}) {
            const double grad = z_q_gradient(fam, std::span<const double>(&theta, 1))[0];
            const double h = 1e-5;
            const double fd = (z_q(fam, theta + h) - z_q(fam, theta - h)) / (2.0 * h);
            CHECK(std::abs(grad - fd) <= 1e-6 * (1.0 + std::abs(fd)));
        }
    }
}

TEST_CASE("parametric bregman identities") {
    const auto [p0, p1] = gauss_endpoints(1.5);

    SUBCASE("identical parameters give zero") {
        const QExpFamily fam = make_lr_family(p0, p1, 0.5);
        CHECK(parametric_bregman(fam, 0.4, 0.4, ParametricGenerator::scaled_zq) == 0.0);
    }
    SUBCASE("scaled Z_q generator recovers the Amari alpha divergence") {
        for (double q : {0.5, 2.0}) {
            const QExpFamily fam = make_lr_family(p0, p1, q);
            for (auto [ta, tb] : {std::pair{0.2, 0.7}, std::pair{0.9, 0.1}}) {
                const double lhs =
                    parametric_bregman(fam, ta, tb, ParametricGenerator::scaled_zq);
                const double rhs = named_divergence(
                    AmariAlpha{q}, unnormalized_density(fam, ta), unnormalized_density(fam, tb));
                CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(rhs)));
            }
        }
    }
    SUBCASE("log partition generator recovers the normalized KL, reversed") {
        const QExpFamily fam = make_lr_family(p0, p1, 1.0);
        for (auto [ta, tb] : {std::pair{0.3, 0.8}, std::pair{0.6, 0.25}}) {
            const double lhs = parametric_bregman(fam, ta, tb, ParametricGenerator::log_z);
            const double rhs = named_divergence(
                KLNormalized{}, unnormalized_density(fam, tb), unnormalized_density(fam, ta));
            CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(rhs)));
        }
    }
    SUBCASE("generator is invariant to affine-in-theta perturbations") {
        const QExpFamily fam = make_lr_family(p0, p1, 0.5);
        const double ta = 0.3, tb = 0.8;
        auto g = [&](double t) { return z_q(fam, t) / fam.q; };
        auto gp = [&](double t) {
            return z_q_gradient(fam, std::span<const double>(&t, 1))[0] / fam.q;
        };
        const double base = bregman_of(g, gp, ta, tb);
        const double c = 2.7, d = -1.3;
        auto g2 = [&](double t) { return g(t) + c * t + d; };
        auto gp2 = [&](double t) { return gp(t) + c; };
        const double perturbed = bregman_of(g2, gp2, ta, tb);
        CHECK(std::abs(base - perturbed) <= 1e-12 * (1.0 + std::abs(base)));
        CHECK(base == doctest::Approx(parametric_bregman(
                          fam, ta, tb, ParametricGenerator::scaled_zq)).epsilon(1e-12));
    }
}

TEST_CASE("renyi from the log-partition jensen gap") {
    const Support grid = Support::grid(-10.0, 10.0, 2001);
    const Density p0 = normalize(materialize({GaussianSpec{0.0, 1.0}, 1.0}, grid));
    const Density p1 = normalize(materialize({GaussianSpec{1.0, 1.3}, 1.0}, grid));
    const QExpFamily fam = make_lr_family(p0, p1, 1.0);
    auto psi = [&](double b) { return std::log(z_q(fam, b)); };
    for (double beta : {0.3, 0.5, 0.75}) {
        const double gap = ((1.0 - beta) * psi(0.0) + beta * psi(1.0) - psi(beta)) /
                           (beta * (1.0 - beta));
        const double named = named_divergence(Renyi{beta}, p0, p1);
        CHECK(std::abs(gap - named) <= 1e-8 * (1.0 + std::abs(named)));
    }
}

TEST_CASE("linear-parameter annealing inside a q-exponential family") {
    const Support grid = Support::grid(-10.0, 10.0, 1001);
    const Density base = materialize({GaussianSpec{0.0, 2.0}, 1.0}, grid);
    for (double q : {0.5, 1.0, 1.5}) {
        QExpFamily fam;
        fam.q = q;
        fam.base = base;
        std::vector<double> stat(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) stat[i] = std::tanh(grid.node(i));
        fam.suffstats.push_back(std::move(stat));
        fam.theta_domain.push_back({-1.0, 1.0});

        const double t0 = -0.4, t1 = 0.7;
        const Density d0 = unnormalized_density(fam, std::span<const double>(&t0, 1));
        const Density d1 = unnormalized_density(fam, std::span<const double>(&t1, 1));
        const AnnealingPath path = make_path(d0, d1, RepresentationFn::log_q(q));
        for (double beta : {0.25, 0.6}) {
            const double tb = (1.0 - beta) * t0 + beta * t1;
            const Density member = unnormalized_density(fam, std::span<const double>(&tb, 1));
            const Density mixed = evaluate(path, beta);
            for (std::size_t i = 0; i < grid.n; ++i)
                CHECK(std::abs(member.values[i] - mixed.values[i]) <=
                      1e-10 * (1.0 + member.values[i]));
        }
    }
}

TEST_CASE("clipping produces zeros in the density") {
    const Support grid = Support::grid(-10.0, 10.0, 101);
    const Density base = materialize({GaussianSpec{0.0, 3.0}, 1.0}, grid);
    QExpFamily fam;
    fam.q = 0.5;
    fam.base = base;
    std::vector<double> stat(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) stat[i] = grid.node(i);
    fam.suffstats.push_back(std::move(stat));
    fam.theta_domain.push_back({-1.0, 1.0});
    const double theta = -0.5;
    const Density d = unnormalized_density(fam, std::span<const double>(&theta, 1));
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double arg = 1.0 + (1.0 - fam.q) * theta * grid.node(i);
        if (arg < 0.0) CHECK(d.values[i] == 0.0);
        if (arg > 0.0) CHECK(d.values[i] > 0.0);
    }
}

TEST_CASE("family validation errors") {
    const Density p0 = Density::on_discrete({1.0, 0.0});
    const Density p1 = Density::on_discrete({1.0, 1.0});
    CHECK_THROWS_AS(make_lr_family(p0, p1, 0.5), domain_error);

    const Density ok0 = Density::on_discrete({1.0, 1.0});
    const QExpFamily fam = make_lr_family(ok0, p1, 0.5);
    CHECK_THROWS_AS(unnormalized_density(fam, 1.5), domain_error);
}
