#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace acyclab {

// Seedable random stream with substream derivation by path.
// Identical (seed, path) yields identical draws; distinct paths give
// statistically independent substreams (splitmix64 mixing per path element,
// feeding a mt19937_64).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path = {})
        : seed_(seed), path_(std::move(path)) {
        std::uint64_t s = mix(seed_ ^ 0x9e3779b97f4a7c15ULL);
        for (std::uint64_t p : path_) s = mix(s ^ mix(p + 0xbf58476d1ce4e5b9ULL));
        rng_.seed(s);
    }

    // Child substream; does not consume randomness from this stream.
    RandomStream child(std::uint64_t idx) const {
        std::vector<std::uint64_t> p = path_;
        p.push_back(idx);
        return RandomStream(seed_, std::move(p));
    }

    std::uint64_t next_u64() { return rng_(); }

    // Uniform integer in [0, m), m >= 1. Rejection against the biased tail.
    std::uint64_t below(std::uint64_t m) {
        if (m == 0) throw std::invalid_argument("RandomStream::below: m == 0");
        std::uint64_t threshold = (0 - m) % m;
        for (;;) {
            std::uint64_t r = rng_();
            if (r >= threshold) return r % m;
        }
    }

    double unit() {  // uniform in [0, 1)
        return (rng_() >> 11) * (1.0 / 9007199254740992.0);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    std::uint64_t seed() const { return seed_; }
    const std::vector<std::uint64_t>& path() const { return path_; }

private:
    static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::mt19937_64 rng_;
};

}  // namespace acyclab
