#pragma once

#include <cstdint>
#include <cmath>

namespace rectfree {

/// splitmix64 (Steele, Lea, Flood): used only to expand seeds into generator
/// state, so distinct (seed, chunk) pairs get decorrelated streams.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

/// xoshiro256++ (Blackman, Vigna).  Hand-implemented, together with the
/// Box-Muller normal sampler below, so that streams are bit-identical across
/// platforms and standard library versions.
class Xoshiro256pp {
  public:
    static Xoshiro256pp seeded(std::uint64_t seed) {
        SplitMix64 sm(seed);
        Xoshiro256pp g;
        for (auto& w : g.s_) w = sm.next();
        return g;
    }

    /// Independent stream for one chunk of a partitioned computation: the
    /// splitmix64 seed is derived from (seed, chunk_index), so results are
    /// reproducible for any assignment of chunks to workers.
    static Xoshiro256pp chunk_stream(std::uint64_t seed, std::uint64_t chunk_index) {
        SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (chunk_index + 1)));
        return seeded(mix.next());
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; pairs are cached.
    double next_gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        // 1 - u in (0, 1] keeps the logarithm finite.
        const double u1 = 1.0 - next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4] = {1, 2, 3, 4};
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace rectfree
