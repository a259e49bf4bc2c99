#pragma once

// Deterministic random number generation with a documented seed-derivation
// tree.  Every stochastic routine in the library draws through Rng so that
// (seed, inputs) -> output is bit-identical on a fixed build.  The standard
// <random> distributions are implementation-defined, so the uniform and
// normal transforms are spelled out here.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace cslab {

// splitmix64 step; also used as the seed mixer for derived streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Seed tree: master seed -> named experiment stream -> indexed substream.
// derive_seed(derive_seed(master, "collapse-traj"), trajectory_index) is the
// canonical path, so any subset of an ensemble can be regenerated alone.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    std::uint64_t s = parent ^ (0x9e3779b97f4a7c15ull * (index + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag) {
    // FNV-1a over the tag, then mixed with the parent.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return derive_seed(parent, h);
}

// xoshiro-style generator seeded via splitmix64.  Small, fast, and fully
// specified here (no reliance on libstdc++ internals).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : state_) w = splitmix64(sm);
        have_cached_normal_ = false;
    }

    std::uint64_t next_u64() {
        // xoshiro256**
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1] (safe as a log argument).
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller.  Caches the second deviate.
    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        cached_normal_ = r * std::sin(phi);
        have_cached_normal_ = true;
        return r * std::cos(phi);
    }

    // Isotropic unit 3-vector.
    void unit_vector(double v[3]) {
        const double c = 2.0 * uniform() - 1.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double phi = 2.0 * std::numbers::pi * uniform();
        v[0] = s * std::cos(phi);
        v[1] = s * std::sin(phi);
        v[2] = c;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
    bool have_cached_normal_;
    double cached_normal_ = 0.0;
};

} // namespace cslab
