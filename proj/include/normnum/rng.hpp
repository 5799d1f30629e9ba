#ifndef NORMNUM_RNG_HPP
#define NORMNUM_RNG_HPP

// Deterministic random source for every seeded audit in the library and CLI.
//
// The generator is SplitMix64 (Steele/Lea/Flood 2014), pinned here so that
// reports produced with the same seed are byte-identical across builds and
// platforms. Do not swap the algorithm without bumping the CLI schema.

#include "normnum/rational.hpp"

#include <cstdint>

namespace normnum {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Rejection-free modulo bias is fine
    // for audit sampling; bounds here are tiny relative to 2^64.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Uniform dyadic rational in [0, 1) with denominator 2^bits, bits <= 62.
    Rat dyadic(unsigned bits) {
        std::uint64_t v = next() >> (64 - bits);
        return rat(Int(static_cast<unsigned long>(v)), int_pow(2, bits));
    }

    // Uniform rational in [lo, hi) on a 2^bits grid.
    Rat in_range(const Rat& lo, const Rat& hi, unsigned bits = 32) {
        return lo + dyadic(bits) * (hi - lo);
    }

    double unit_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace normnum

#endif
