#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace anneal {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic stream of doubles. Distribution code is hand-rolled so the
// output is identical across standard library implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    // Counter-based split: stream `index` derived from a master seed.
    static RngStream split(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t s = master_seed;
        splitmix64(s);
        s ^= 0x5851f42d4c957f2dULL * (index + 1);
        return RngStream(splitmix64(s));
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1], safe as a log argument.
    double uniform_pos() { return 1.0 - uniform(); }

    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    // Index draw proportional to nonnegative weights (at least one positive).
    std::size_t categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        const double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

    std::uint64_t next_u64() { return eng_(); }

private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace anneal
