#pragma once

#include "rational.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace affine {

/// Deterministic random source. All derivations are written out by hand (no
/// std::*_distribution) so that seeded runs produce identical bytes on every
/// platform, which the reporting contract relies on.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    /// Uniform-ish index in [0, n); n must be > 0.
    size_t below(size_t n) { return static_cast<size_t>(next() % n); }

    /// True with probability num/den.
    bool chance(size_t num, size_t den) { return below(den) < num; }

    /// k/grain for uniform k in [0, grain].
    Rational unit_rational(unsigned grain = 32) {
        return Rational(static_cast<long>(below(grain + 1)), static_cast<long>(grain));
    }

    /// Grid rational in [lo, hi].
    Rational between(const Rational& lo, const Rational& hi, unsigned grain = 32) {
        return lo + (hi - lo) * unit_rational(grain);
    }

private:
    std::mt19937_64 gen_;
};

/// Stable per-case seed: FNV-1a over the tag mixed with master seed and index.
inline uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index) {
    uint64_t h = 1469598103934665603ull;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    uint64_t z = h ^ master ^ (index * 0x9e3779b97f4a7c15ull);
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace affine
