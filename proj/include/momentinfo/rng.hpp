#pragma once

#include <cmath>
#include <cstdint>

namespace momentinfo {

/// SplitMix64 (Steele, Lea, Flood 2014): a counter-based generator with a
/// fixed golden-gamma increment and a 64-bit finalizer. Substreams are derived
/// by hashing (seed, stream ids) through the same finalizer, so trial-level
/// streams are reproducible across platforms and run orders.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ull);
        s = mix(s ^ (a + 0xBF58476D1CE4E5B9ull));
        s = mix(s ^ (b + 0x94D049BB133111EBull));
        return SplitMix64(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1] (safe for log).
    double uniform_pos() { return 1.0 - uniform(); }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform_pos();
        double v = uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        double c = std::cos(6.283185307179586476925286766559 * v);
        double s = std::sin(6.283185307179586476925286766559 * v);
        spare_ = r * s;
        have_spare_ = true;
        return r * c;
    }

    double exponential() { return -std::log(uniform_pos()); }

    /// Poisson by inversion-by-multiplication (Knuth); fine for small means.
    int poisson(double mean) {
        double limit = std::exp(-mean);
        double prod = uniform();
        int k = 0;
        while (prod > limit) {
            prod *= uniform();
            ++k;
        }
        return k;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace momentinfo
