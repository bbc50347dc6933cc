#pragma once

#include <cmath>
#include <cstdint>

#include "rwre/vec.hpp"

namespace rwre {

// splitmix64 finalizer; the workhorse for keyed hashing.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
}

// Deterministic key of (seed, site, tag). Used for lazy environment fields:
// the value at a site never depends on query order.
inline std::uint64_t site_key(std::uint64_t seed, const Site& x, std::uint64_t tag = 0) {
    std::uint64_t h = hash_combine(seed, tag);
    for (int i = 0; i < x.d; ++i) h = hash_combine(h, std::uint64_t(x.c[i]));
    return h;
}

// Counter-based stream: state advances by a fixed odd increment through the
// splitmix64 finalizer. Streams derived from (master, stream_id) are
// independent of scheduling, which is what makes parallel runs reproducible.
class Rng {
  public:
    Rng() : Rng(0, 0) {}
    Rng(std::uint64_t master_seed, std::uint64_t stream_id)
        : state_(hash_combine(master_seed, hash_combine(0x5851f42d4c957f2dull, stream_id))) {}

    std::uint64_t next_u64() { return mix64(state_ += 0x9e3779b97f4a7c15ull); }

    // uniform in [0,1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0,1), safe for log()
    double uniform_pos() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return u;
    }

    std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

    double normal() {
        // Box-Muller, single value per call (second discarded; clarity over thrift)
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    // Marsaglia-Tsang for alpha >= 1, boost for alpha < 1. Hand-rolled so the
    // stream is identical across standard libraries.
    double gamma(double alpha) {
        if (alpha < 1.0) {
            double u = uniform_pos();
            return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
        }
        double d = alpha - 1.0 / 3.0;
        double cinv = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + cinv * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace rwre
