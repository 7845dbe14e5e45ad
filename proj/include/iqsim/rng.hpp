#pragma once

#include <cstdint>

namespace iq {

inline uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// xoshiro256** seeded via splitmix64. Streams derived from (seed, stream)
// are independent, so shot i's draws never depend on the worker that ran it.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0) {
        uint64_t x = seed ^ (stream * 0x9e3779b97f4a7c15ull + 0x8c2f9d7081a3b1c5ull);
        for (int i = 0; i < 4; i++) s_[i] = splitmix64(x);
    }

    uint64_t next_u64() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    bool next_bit() { return next_u64() >> 63; }

    // uniform integer in [0, bound), bound <= 2^32
    uint32_t next_below(uint32_t bound) {
        return uint32_t((next_u64() >> 32) * uint64_t(bound) >> 32);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace iq
