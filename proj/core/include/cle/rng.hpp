#pragma once

#include <cstdint>
#include <cmath>
#include <limits>

namespace cle {

// splitmix64, used to expand seeds and to derive independent stream seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ generator.  Satisfies UniformRandomBitGenerator, so the
// <random> distributions (gamma, poisson) can run on top of it; the hot
// SDE loops use the members below directly.
class Rng {
  public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed = 0) { reseed(seed); }

    // Stream k of a master seed.  Streams with distinct (seed, k) are
    // independent for all practical purposes; this is the documented
    // splitting rule used by every parallel sampler in the library.
    Rng(uint64_t master_seed, uint64_t stream) {
        uint64_t s = master_seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        reseed(s);
    }

    void reseed(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
        have_spare_ = false;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~uint64_t(0); }

    uint64_t operator()() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0,1]; never returns 0 so log() is safe.
    double uniform() {
        return double((operator()() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * (uniform() - 0x1.0p-53); }

    // Standard normal via the Marsaglia polar method with a cached spare.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double exponential() { return -std::log(uniform()); }

    bool bernoulli(double p) { return uniform() <= p; }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4]{};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace cle
