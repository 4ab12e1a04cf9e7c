#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "anneal/paths.hpp"
#include "anneal/rng.hpp"

namespace anneal {

// Annealing schedule: beta_0 = 0 < ... < beta_T = 1.
struct Schedule {
    std::vector<double> betas;

    static Schedule linear(std::size_t T);
    static Schedule of(std::vector<double> betas);
    std::size_t steps() const { return betas.size() - 1; }
};

struct RandomWalkMH {
    double step = 0.5;
    int sweeps = 1;
};
struct ExactResample {};
using TransitionKernel = std::variant<RandomWalkMH, ExactResample>;

struct AisConfig {
    AnnealingPath path;
    Schedule schedule;
    TransitionKernel kernel = ExactResample{};
    std::size_t chains = 1;
    std::uint64_t seed = 0;
};

struct AisResult {
    std::vector<double> log_weights;          // one per chain
    double ratio_estimate = 0.0;              // mean of exp(log_weights)
    double log_ratio_estimate = 0.0;          // log of that mean
    double ess = 0.0;                         // (sum w)^2 / sum w^2
    std::vector<double> acceptance_rates;     // per annealing step
    // Optional trace: log weight of chain k after step t, row-major [k][t].
    std::vector<std::vector<double>> trace;
    bool keep_trace = false;
};

// Annealed importance sampling over the configured path. Chains use
// counter-split RNG streams, so the result is a deterministic function of
// the config regardless of evaluation order.
AisResult run_ais(const AisConfig& cfg, bool keep_trace = false);

// log((1/K) sum exp(l_k)) with max-shift stabilization.
double log_sum_exp_mean(std::span<const double> log_weights);

// One random-walk Metropolis step. Grid states move by a Gaussian increment
// evaluated against the linearly interpolated density; discrete states
// propose a uniform neighbor.
struct MhStep {
    double x = 0.0;
    bool accepted = false;
};
MhStep mh_kernel_step_grid(const Density& target, double x, double step, RngStream& rng);

struct MhStepDiscrete {
    std::size_t index = 0;
    bool accepted = false;
};
MhStepDiscrete mh_kernel_step_discrete(const Density& target, std::size_t index,
                                       RngStream& rng);

// Tabulated inverse-CDF sampler (linear interpolation on grids, categorical
// on discrete spaces).
class TabulatedSampler {
public:
    explicit TabulatedSampler(const Density& d);
    // Grid: a point in [lo, hi]. Discrete: the index, returned as a double.
    double sample(RngStream& rng) const;

private:
    const Density* density_;
    std::vector<double> cdf_;
};

}  // namespace anneal
