#pragma once

#include <cmath>
#include <cstdint>

namespace hypmet {

/// splitmix64: tiny counter-style generator with full 64-bit avalanche.
/// Used everywhere randomness is needed so that results depend only on the
/// seeds written into reports, never on library implementation details.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Independent stream for sample number k under a fixed seed. The draw for
/// sample k is a pure function of (seed, k): partitioning samples across
/// workers cannot change what any sample sees.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t k) {
        gen_.state = mix64(seed ^ 0x6A09E667F3BCC909ULL) ^ mix64(k + 0x9E3779B97F4A7C15ULL);
    }

    std::uint64_t next_u64() { return gen_.next(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(gen_.next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Multiply-shift bounded draw; bias < 2^-64, irrelevant next to the
        // determinism requirement.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_.next()) * n) >> 64);
    }

    /// Standard normal via Box-Muller (one value per call).
    double normal() {
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    SplitMix64 gen_;
};

/// Draws `arity` distinct indices in [0, n) for sample k. Rejection inside
/// the per-sample stream keeps the result a function of (seed, k) alone.
template <int Arity>
inline void sample_distinct(std::uint64_t seed, std::uint64_t k, int n,
                            int (&out)[Arity]) {
    SampleStream s(seed, k);
    for (int a = 0; a < Arity; ++a) {
        for (;;) {
            const int v = static_cast<int>(s.below(static_cast<std::uint64_t>(n)));
            bool fresh = true;
            for (int b = 0; b < a; ++b)
                if (out[b] == v) { fresh = false; break; }
            if (fresh) { out[a] = v; break; }
        }
    }
}

} // namespace hypmet
