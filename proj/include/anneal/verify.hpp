#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "anneal/divergences.hpp"
#include "anneal/paths.hpp"

namespace anneal {

struct GoldenSearchOptions {
    double tol = 1e-10;  // interval width on the rho scale
    int max_iters = 200;
};

// Scalar golden-section minimizer over [lo, hi]; assumes unimodality.
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, const GoldenSearchOptions& opts = {});

struct BarycenterReport {
    Density pointwise_argmin;
    Density analytic_mean;
    double max_abs_deviation = 0.0;
    double objective_at_argmin = 0.0;
    double objective_at_mean = 0.0;
};

// Pointwise golden-section minimization of the expected scalar divergence
// over rho(mu) within [min_i rho(pi_i(x)), max_i rho(pi_i(x))]; the
// decomposable objective makes this an independent oracle for the analytic
// quasi-arithmetic mean.
BarycenterReport barycenter_bruteforce(const RhoTauPair& pair,
                                       std::span<const Density> inputs,
                                       const MixtureWeights& weights,
                                       const GoldenSearchOptions& opts = {});

// Convex generator on R^d with gradient, for the vector-valued check.
struct ConvexGenerator {
    std::string name;
    std::function<double(std::span<const double>)> value;
    std::function<std::vector<double>(std::span<const double>)> gradient;
};

ConvexGenerator quadratic_generator(std::size_t dim);
// log-sum-exp plus half squared norm; the ridge keeps the generator strictly
// convex so the minimizer is unique.
ConvexGenerator log_sum_exp_generator(std::size_t dim);

struct VectorBregmanReport {
    std::vector<double> minimizer;
    std::vector<double> analytic_mean;
    double max_abs_deviation = 0.0;
    double jensen_gap = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Gradient-descent minimization of the expected vector Bregman divergence
// under an elementwise representation; compares against the elementwise
// quasi-arithmetic mean.
VectorBregmanReport vector_bregman_information_check(
    const ConvexGenerator& gen, const RepresentationFn& rho,
    std::span<const std::vector<double>> inputs, const MixtureWeights& weights);

enum class ConnectionSide { primal, dual };

struct GeodesicReport {
    std::vector<double> betas;
    std::vector<double> residuals;  // weighted sup over support points, per beta
    double step = 0.0;
    double max_residual() const;
};

// Central-difference estimate of the auto-parallelism residual
//   dd(gamma) + (rho''(gamma)/rho'(gamma)) d(gamma)^2
// for the primal connection (tau''/tau' for the dual side).
GeodesicReport geodesic_residual(const AnnealingPath& path, const RhoTauPair& pair,
                                 std::span<const double> betas, double h,
                                 ConnectionSide side = ConnectionSide::primal);

// Verification suites behind the `verify` CLI subcommand.
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const;
};

// tol_scale multiplies every tolerance (CLI --tol override).
SuiteReport run_suite_theorem1(std::uint64_t seed = 7001, double tol_scale = 1.0);
SuiteReport run_suite_theorem2(double tol_scale = 1.0);
SuiteReport run_suite_theorem3(std::uint64_t seed = 7003, double tol_scale = 1.0);
SuiteReport run_suite_zoo(std::uint64_t seed = 7004, double tol_scale = 1.0);
SuiteReport run_suite_limits(std::uint64_t seed = 7005, double tol_scale = 1.0);
std::vector<SuiteReport> run_all_suites(std::uint64_t seed = 7000, double tol_scale = 1.0);

}  // namespace anneal
