#include <cmath>

#include "anneal/errors.hpp"
#include "anneal/rng.hpp"
#include "anneal/verify.hpp"
#include "doctest.h"

using namespace anneal;

TEST_CASE("golden section") {
    const double x = golden_section_min([](double v) { return (v - 2.0) * (v - 2.0); },
                                        0.0, 5.0, {1e-12, 300});
    CHECK(x == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(golden_section_min([](double v) { return v; }, 1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(golden_section_min([](double v) { return v; }, 2.0, 1.0), domain_error);
}

TEST_CASE("barycenter brute force agrees with the analytic mean") {
    RngStream rng(101);
    auto random_density = [&](std::size_t n) {
        std::vector<double> v(n);
        for (double& x : v) x = 0.1 + 2.9 * rng.uniform();
        return Density::on_discrete(std::move(v));
    };

    // Golden section resolves a quadratic minimum to about sqrt(eps), so
    // deviations land near 1e-8; the contract tolerance is 1e-7.
    SUBCASE("identity pair recovers the arithmetic mean") {
        const auto pair =
            make_pair(RepresentationFn::identity(), RepresentationFn::identity());
        const Density inputs[2] = {random_density(16), random_density(16)};
        const auto report =
            barycenter_bruteforce(pair, inputs, MixtureWeights::two_point(0.3));
        CHECK(report.max_abs_deviation <= 1e-7);
        CHECK(report.objective_at_mean <= report.objective_at_argmin + 1e-9);
    }
    SUBCASE("KL pair recovers the geometric mean") {
        const auto pair = make_pair(RepresentationFn::log(), RepresentationFn::identity());
        const Density inputs[2] = {random_density(24), random_density(24)};
        const auto report =
            barycenter_bruteforce(pair, inputs, MixtureWeights::two_point(0.5));
        CHECK(report.max_abs_deviation <= 1e-7);
    }
    SUBCASE("deformed pair with three inputs") {
        const auto pair = make_pair(RepresentationFn::log_q(0.5),
                                    RepresentationFn::log_one_minus_lambda(0.5));
        const Density inputs[3] = {random_density(12), random_density(12),
                                   random_density(12)};
        const auto report = barycenter_bruteforce(
            pair, inputs, MixtureWeights::of({0.2, 0.5, 0.3}));
        CHECK(report.max_abs_deviation <= 1e-7);
        CHECK(report.objective_at_mean <= report.objective_at_argmin + 1e-9);
    }
}

TEST_CASE("vector bregman information check") {
    SUBCASE("quadratic with identity rho lands on the arithmetic mean") {
        const std::vector<std::vector<double>> inputs = {{1.0, 2.0, 0.5}, {3.0, 0.4, 1.5}};
        const auto report = vector_bregman_information_check(
            quadratic_generator(3), RepresentationFn::identity(), inputs,
            MixtureWeights::two_point(0.4));
        CHECK(report.converged);
        CHECK(report.max_abs_deviation <= 1e-8);
        CHECK(report.jensen_gap >= -1e-12);
    }
    SUBCASE("log-sum-exp with elementwise log rho") {
        const std::vector<std::vector<double>> inputs = {{0.5, 2.0}, {1.5, 0.7}};
        const auto report = vector_bregman_information_check(
            log_sum_exp_generator(2), RepresentationFn::log(), inputs,
            MixtureWeights::two_point(0.5));
        CHECK(report.converged);
        CHECK(report.max_abs_deviation <= 1e-6);
    }
    SUBCASE("degenerate weights select the first input") {
        const std::vector<std::vector<double>> inputs = {{1.0, 2.0}, {3.0, 0.5}};
        const auto report = vector_bregman_information_check(
            quadratic_generator(2), RepresentationFn::identity(), inputs,
            MixtureWeights::of({1.0, 0.0}));
        CHECK(report.max_abs_deviation <= 1e-9);
        CHECK(report.minimizer[0] == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("jensen gap equals the expected divergence at the mean") {
        const auto gen = log_sum_exp_generator(3);
        const std::vector<std::vector<double>> inputs = {
            {0.4, 1.1, 2.0}, {1.7, 0.3, 0.8}, {0.9, 0.9, 1.4}};
        const auto w = MixtureWeights::of({0.2, 0.5, 0.3});
        const auto report = vector_bregman_information_check(
            gen, RepresentationFn::log(), inputs, w);
        // Direct expected vector divergence at the analytic mean.
        std::vector<double> mean_rep(3, 0.0);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            for (std::size_t j = 0; j < 3; ++j)
                mean_rep[j] += w.beta[i] * std::log(inputs[i][j]);
        }
        const auto grad = gen.gradient(mean_rep);
        double direct = -gen.value(mean_rep);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            std::vector<double> rep(3);
            for (std::size_t j = 0; j < 3; ++j) rep[j] = std::log(inputs[i][j]);
            double inner = 0.0;
            for (std::size_t j = 0; j < 3; ++j) inner += (rep[j] - mean_rep[j]) * grad[j];
            direct += w.beta[i] * gen.value(rep) - w.beta[i] * inner;
        }
        CHECK(report.jensen_gap == doctest::Approx(direct).epsilon(1e-12));
        CHECK(report.jensen_gap >= 0.0);
    }
}

TEST_CASE("geodesic residuals") {
    const Support grid = Support::grid(-10.0, 10.0, 201);
    const Density g0 = materialize({GaussianSpec{0.0, 1.0}, 1.0}, grid);
    const Density g1 = materialize({GaussianSpec{2.0, 1.5}, 1.0}, grid);
    const auto pair = make_pair(RepresentationFn::log(), RepresentationFn::identity());
    const double betas[] = {0.3, 0.5, 0.7};

    SUBCASE("arithmetic path under the dual connection sits at rounding") {
        // The true residual is identically zero; the numerical one is pure
        // second-difference rounding, ~4 eps max|gamma| / h^2.
        const AnnealingPath arith = make_path(g0, g1, RepresentationFn::identity());
        const auto fine = geodesic_residual(arith, pair, betas, 1e-4, ConnectionSide::dual);
        CHECK(fine.max_residual() <= 1e-7);
        const auto coarse = geodesic_residual(arith, pair, betas, 1e-2, ConnectionSide::dual);
        CHECK(coarse.max_residual() <= 1e-11);
    }
    SUBCASE("geometric path under the primal connection converges at order 2") {
        const AnnealingPath geo = make_path(g0, g1, RepresentationFn::log());
        const double r1 =
            geodesic_residual(geo, pair, betas, 1e-2, ConnectionSide::primal).max_residual();
        const double r2 =
            geodesic_residual(geo, pair, betas, 5e-3, ConnectionSide::primal).max_residual();
        const double r3 =
            geodesic_residual(geo, pair, betas, 2.5e-3, ConnectionSide::primal).max_residual();
        CHECK(r1 / r2 >= 3.5);
        CHECK(r2 / r3 >= 3.5);
        const double fine =
            geodesic_residual(geo, pair, betas, 1e-3, ConnectionSide::primal).max_residual();
        CHECK(fine <= 1e-4);
    }
    SUBCASE("step bounds are validated") {
        const AnnealingPath geo = make_path(g0, g1, RepresentationFn::log());
        const double bad_betas[] = {0.999};
        CHECK_THROWS_AS(geodesic_residual(geo, pair, bad_betas, 1e-2), domain_error);
    }
}

TEST_CASE("verification suites pass") {
    CHECK(run_suite_theorem1().pass());
    CHECK(run_suite_theorem2().pass());
    CHECK(run_suite_theorem3().pass());
    CHECK(run_suite_zoo().pass());
    CHECK(run_suite_limits().pass());
}
