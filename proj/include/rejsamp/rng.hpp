#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace rejsamp {

// Counter-based generator: output i of a stream with key k is
//   mix64(k ^ mix64(i + C)),  mix64 = the SplitMix64 finalizer.
// No state besides (key, counter), so any draw can be recomputed from its position.
inline constexpr const char* kPrngId = "splitmix64-ctr-v1";

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// For a fixed master the map index -> seed is a bijection on 64-bit words
// (odd multiply, add, xor and mix64 are all invertible), so derived seeds never collide.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(mix64(master + 0x9e3779b97f4a7c15ULL) ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

class Stream {
public:
    using result_type = std::uint64_t;

    constexpr explicit Stream(std::uint64_t key) : key_(key) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr std::uint64_t at(std::uint64_t i) const { return mix64(key_ ^ mix64(i + 0x632be59bd9b4e019ULL)); }
    constexpr std::uint64_t next() { return at(ctr_++); }
    constexpr result_type operator()() { return next(); }

    // Unbiased integer in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::uint8_t bit() { return static_cast<std::uint8_t>(next() >> 63); }

    // Exact Bernoulli(num/den).
    bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return ctr_; }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

// Uniform k-subset of {1..n}, returned sorted.
std::vector<int> sample_subset(Stream& rng, int n, int k);

// Uniform k-subset of the given pool, returned sorted.
std::vector<int> sample_subset_of(Stream& rng, const std::vector<int>& pool, int k);

} // namespace rejsamp
