#include "anneal/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "anneal/errors.hpp"

namespace anneal {

Schedule Schedule::linear(std::size_t T) {
    if (T == 0) throw domain_error("schedule needs at least one step");
    std::vector<double> betas(T + 1);
    for (std::size_t t = 0; t <= T; ++t)
        betas[t] = static_cast<double>(t) / static_cast<double>(T);
    betas.back() = 1.0;
    return Schedule{std::move(betas)};
}

Schedule Schedule::of(std::vector<double> betas) {
    if (betas.size() < 2 || betas.front() != 0.0 || betas.back() != 1.0)
        throw domain_error("schedule must start at 0 and end at 1");
    for (std::size_t t = 0; t + 1 < betas.size(); ++t) {
        if (!(betas[t] < betas[t + 1]))
            throw domain_error("schedule must be strictly increasing");
    }
    return Schedule{std::move(betas)};
}

double log_sum_exp_mean(std::span<const double> log_weights) {
    if (log_weights.empty()) throw domain_error("log_sum_exp_mean of empty input");
    double m = -std::numeric_limits<double>::infinity();
    for (double l : log_weights) m = std::max(m, l);
    if (std::isinf(m) && m < 0.0) return m;  // all weights are zero
    double acc = 0.0;
    for (double l : log_weights) acc += std::exp(l - m);
    return m + std::log(acc / static_cast<double>(log_weights.size()));
}

TabulatedSampler::TabulatedSampler(const Density& d) : density_(&d) {
    cdf_.resize(d.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        acc += d.weights[i] * d.values[i];
        cdf_[i] = acc;
    }
    if (!(acc > 0.0) || !std::isfinite(acc))
        throw overflow_error("cannot sample a density with zero or non-finite mass");
    for (double& c : cdf_) c /= acc;
    cdf_.back() = 1.0;
}

double TabulatedSampler::sample(RngStream& rng) const {
    const double u = rng.uniform();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    if (i >= cdf_.size()) i = cdf_.size() - 1;
    if (density_->support.kind == SupportKind::discrete) return static_cast<double>(i);
    // Linear interpolation of the inverse CDF between nodes.
    const double hi_cdf = cdf_[i];
    const double lo_cdf = i == 0 ? 0.0 : cdf_[i - 1];
    const double x_hi = density_->x(i);
    const double x_lo = i == 0 ? density_->support.lo : density_->x(i - 1);
    if (hi_cdf == lo_cdf) return x_hi;
    return x_lo + (u - lo_cdf) / (hi_cdf - lo_cdf) * (x_hi - x_lo);
}

MhStep mh_kernel_step_grid(const Density& target, double x, double step, RngStream& rng) {
    if (!(step > 0.0)) throw domain_error("mh step size must be positive");
    const double current = value_at(target, x);
    if (!(current > 0.0)) throw domain_error("mh state has zero target density");
    const double proposal = x + step * rng.normal();
    const double prop_val = value_at(target, proposal);
    const double u = rng.uniform();
    if (u * current < prop_val) return {proposal, true};
    return {x, false};
}

MhStepDiscrete mh_kernel_step_discrete(const Density& target, std::size_t index,
                                       RngStream& rng) {
    const double current = target.values[index];
    if (!(current > 0.0)) throw domain_error("mh state has zero target density");
    const bool up = rng.uniform() < 0.5;
    if (!up && index == 0) return {index, false};
    const std::size_t proposal = up ? index + 1 : index - 1;
    if (proposal >= target.support.n) return {index, false};
    const double u = rng.uniform();
    if (u * current < target.values[proposal]) return {proposal, true};
    return {index, false};
}

AisResult run_ais(const AisConfig& cfg, bool keep_trace) {
    if (cfg.chains < 1) throw config_error("ais needs at least one chain");
    if (const auto* mh = std::get_if<RandomWalkMH>(&cfg.kernel)) {
        if (!(mh->step > 0.0)) throw config_error("ais mh kernel needs step > 0");
        if (mh->sweeps < 1) throw config_error("ais mh kernel needs sweeps >= 1");
    }
    Schedule schedule = Schedule::of(cfg.schedule.betas);  // re-validates
    const std::size_t T = schedule.steps();
    const bool discrete = cfg.path.p0.support.kind == SupportKind::discrete;

    // Tabulate every intermediate density once; unnormalized values feed the
    // weights, normalized CDFs feed the samplers.
    std::vector<Density> levels;
    levels.reserve(T + 1);
    for (double beta : schedule.betas) levels.push_back(evaluate(cfg.path, beta));

    std::vector<TabulatedSampler> samplers;
    const bool exact = std::holds_alternative<ExactResample>(cfg.kernel);
    samplers.emplace_back(levels[0]);
    if (exact) {
        for (std::size_t t = 1; t < T; ++t) samplers.emplace_back(levels[t]);
    }

    AisResult result;
    result.keep_trace = keep_trace;
    result.log_weights.resize(cfg.chains);
    if (keep_trace) result.trace.resize(cfg.chains);
    std::vector<std::uint64_t> accepted(T, 0);
    std::vector<std::uint64_t> proposed(T, 0);

    for (std::size_t k = 0; k < cfg.chains; ++k) {
        RngStream rng = RngStream::split(cfg.seed, k);
        double x = samplers[0].sample(rng);
        double logw = 0.0;
        if (keep_trace) result.trace[k].reserve(T);
        for (std::size_t t = 1; t <= T; ++t) {
            // Transition leaving pi_{beta_{t-1}} invariant, then weight at the
            // new point with the beta_t / beta_{t-1} density ratio.
            if (exact) {
                x = samplers[t - 1].sample(rng);
            } else {
                const auto& mh = std::get<RandomWalkMH>(cfg.kernel);
                for (int s = 0; s < mh.sweeps; ++s) {
                    if (discrete) {
                        const auto out = mh_kernel_step_discrete(
                            levels[t - 1], static_cast<std::size_t>(x), rng);
                        x = static_cast<double>(out.index);
                        accepted[t - 1] += out.accepted ? 1 : 0;
                    } else {
                        const auto out = mh_kernel_step_grid(levels[t - 1], x, mh.step, rng);
                        x = out.x;
                        accepted[t - 1] += out.accepted ? 1 : 0;
                    }
                    ++proposed[t - 1];
                }
            }
            const double num = value_at(levels[t], x);
            const double den = value_at(levels[t - 1], x);
            if (!(den > 0.0)) throw domain_error("ais reached a zero-density state");
            if (num == den) {
                // exact zero increment, bitwise
            } else if (num == 0.0) {
                logw = -std::numeric_limits<double>::infinity();
            } else {
                logw += std::log(num) - std::log(den);
            }
            if (keep_trace) result.trace[k].push_back(logw);
        }
        result.log_weights[k] = logw;
    }

    result.acceptance_rates.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        result.acceptance_rates[t] =
            exact ? 1.0
                  : (proposed[t] == 0 ? 0.0
                                      : static_cast<double>(accepted[t]) /
                                            static_cast<double>(proposed[t]));
    }

    const double lse = log_sum_exp_mean(result.log_weights);
    if (std::isinf(lse) && lse < 0.0)
        throw overflow_error("all ais weights degenerated to zero");
    result.log_ratio_estimate = lse;
    result.ratio_estimate = std::exp(lse);

    double sum = 0.0, sum_sq = 0.0;
    double m = *std::max_element(result.log_weights.begin(), result.log_weights.end());
    for (double l : result.log_weights) {
        const double w = std::exp(l - m);
        sum += w;
        sum_sq += w * w;
    }
    result.ess = sum * sum / sum_sq;
    return result;
}

}  // namespace anneal
