#pragma once

// Seeded random streams. Every run derives all of its randomness from one
// 64-bit master seed through named substreams, so adding or reordering an
// independent consumer never perturbs the draws of another.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace dynsched {

class RngStream {
public:
    RngStream() { engine_.seed(0x9e3779b97f4a7c15ull); }

    RngStream(std::uint64_t master_seed, std::string_view tag, std::uint64_t index = 0) {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the tag
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        std::seed_seq seq{
            static_cast<std::uint32_t>(master_seed),
            static_cast<std::uint32_t>(master_seed >> 32),
            static_cast<std::uint32_t>(h),
            static_cast<std::uint32_t>(h >> 32),
            static_cast<std::uint32_t>(index),
            static_cast<std::uint32_t>(index >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    // uniform in [0,1), 53-bit resolution
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform in (0,1]
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) { engine_(); return true; }
        return uniform01() < p;
    }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % n;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

    // number of failing slots before the next success of a per-slot Bernoulli(p)
    std::int64_t geometric_gap(double p) {
        if (p >= 1.0) { engine_(); return 0; }
        if (p <= 0.0) return std::numeric_limits<std::int64_t>::max() / 4;
        double u = uniform_pos();
        double g = std::floor(std::log(u) / std::log1p(-p));
        if (g < 0.0) g = 0.0;
        const double cap = 9.0e15;
        return static_cast<std::int64_t>(g < cap ? g : cap);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace dynsched
