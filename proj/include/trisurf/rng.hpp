#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace trisurf {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream-splitting rule: the generator for sample i of a run seeded with s is
/// StreamRng(derive_stream_seed(s, i)). Workers drawing disjoint index ranges
/// therefore produce the same samples no matter how indices are partitioned.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

/// Seedable generator with an explicitly coded shuffle, so that sequences are
/// fixed by (seed) alone and do not depend on the standard library's
/// distribution implementations.
class StreamRng {
public:
    explicit StreamRng(std::uint64_t seed) : gen_(splitmix64(seed)) {}
    StreamRng(std::uint64_t seed, std::uint64_t index) : gen_(derive_stream_seed(seed, index)) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform draw from {0, ..., bound-1}, unbiased via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace trisurf
