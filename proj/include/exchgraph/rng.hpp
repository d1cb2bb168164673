#pragma once

// Counter-free random streams for replica-parallel Monte Carlo.
//
// A stream is seeded from (master_seed, replica_index, tag) through the
// splitmix64 finalizer, so every replica owns an independent generator that
// does not depend on scheduling. The generator is xoshiro256**.

#include <bit>
#include <cmath>
#include <cstdint>

namespace exchgraph {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream tags keep independent uses of one replica apart.
enum class StreamTag : std::uint64_t {
    Graph = 1,
    Theta = 2,
    Test = 3,
};

/// Stream seed for (master, replica, tag):
///   s = splitmix(splitmix(master ^ C1) ^ replica * C2 ^ tag * C3)
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t replica, StreamTag tag) {
    std::uint64_t s = master ^ 0x6a09e667f3bcc908ULL;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ (replica * 0xd1b54a32d192ed03ULL) ^ (static_cast<std::uint64_t>(tag) * 0xa0761d6478bd642fULL);
    return splitmix64(t);
}

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() {
        double u;
        do u = uniform();
        while (u == 0.0);
        return u;
    }

    /// Uniform integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do x = (*this)();
        while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t s_[4];
};

}  // namespace exchgraph
