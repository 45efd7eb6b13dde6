#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace refmatch {

// Seeded RNG wrapper. std::mt19937_64's bit stream is fixed by the standard;
// the distribution mappings below are hand-rolled because the std::*_distribution
// algorithms are implementation-defined and would break byte-identical runs
// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t bounded(std::uint64_t bound) {
        // Rejection sampling on the top bits; unbiased.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    std::size_t index(std::size_t size) { return static_cast<std::size_t>(bounded(size)); }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool chance(double p) { return uniform() < p; }

    // Box-Muller; one value per call (the pair's twin is discarded to keep the
    // consumption pattern trivially reproducible).
    double normal(double mean, double stddev) {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        return mean + stddev * z;
    }

    double clipped_normal(double mean, double stddev, double lo, double hi) {
        const double v = normal(mean, stddev);
        return v < lo ? lo : (v > hi ? hi : v);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<std::size_t>(bounded(i))]);
        }
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[index(v.size())];
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace refmatch
