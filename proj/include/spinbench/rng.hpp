// rng.hpp — reproducible counter-seeded random streams
//
// Ensemble runs need one independent, stable stream per trajectory: the pair
// (master_seed, stream_index) must map to the same sample sequence on every
// machine, every compiler, and every thread schedule. std::normal_distribution
// makes no cross-platform guarantee, so the generator and the Gaussian layer
// are both fixed here: PCG64 (XSL-RR 128/64) with the stream index selecting
// the sequence, and Marsaglia's polar method on top.
#pragma once

#include <cstdint>
#include <cmath>

namespace spinbench {

struct SeedSpec {
    std::uint64_t master_seed{0};
    std::uint64_t stream_index{0};
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// PCG64: 128-bit LCG state, XSL-RR output. Distinct stream indices choose
// distinct (odd) increments, giving statistically independent sequences.
class Pcg64 {
  public:
    explicit Pcg64(SeedSpec seed) {
        std::uint64_t sm = seed.master_seed;
        const unsigned __int128 init_state =
            (static_cast<unsigned __int128>(splitmix64(sm)) << 64) | splitmix64(sm);
        const unsigned __int128 sequence =
            (static_cast<unsigned __int128>(0x5851f42d4c957f2dULL) << 64) | seed.stream_index;
        inc_ = (sequence << 1) | 1u;
        state_ = 0u;
        next_u64();
        state_ += init_state;
        next_u64();
    }

    std::uint64_t next_u64() {
        const unsigned __int128 old = state_;
        state_ = old * mult() + inc_;
        const std::uint64_t xored = static_cast<std::uint64_t>(old >> 64) ^ static_cast<std::uint64_t>(old);
        const unsigned rot = static_cast<unsigned>(old >> 122);
        return (xored >> rot) | (xored << ((-rot) & 63u));
    }

    // Uniform on (0,1]; never 0, so log() is safe.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

  private:
    static constexpr unsigned __int128 mult() {
        return (static_cast<unsigned __int128>(2549297995355413924ULL) << 64) | 4865540595714422341ULL;
    }
    unsigned __int128 state_{0};
    unsigned __int128 inc_{0};
};

// Standard normal via the polar method; consumes a data-dependent but
// seed-deterministic number of uniforms.
class GaussianSource {
  public:
    explicit GaussianSource(SeedSpec seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * engine_.next_unit() - 1.0;
            v = 2.0 * engine_.next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

  private:
    Pcg64 engine_;
    double spare_{0.0};
    bool has_spare_{false};
};

} // namespace spinbench
