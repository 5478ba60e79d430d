#pragma once

#include <cstdint>
#include <random>

#include "plateaulab/complex_matrix.hpp"

namespace plateaulab {

/// Deterministic random source. The same seed always reproduces the same
/// draw sequence, independent of platform and thread schedule.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; pairs are cached.
    double normal();

    /// Standard complex normal: real and imaginary parts each N(0, 1/2).
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im) * 0.7071067811865476;
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Decorrelated per-stream seed derived from a base seed and a stream index.
/// Records carry the derived seed, so any sample can be regenerated on its
/// own by seeding an Rng with it.
std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t stream);

}  // namespace plateaulab
