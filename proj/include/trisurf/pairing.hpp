#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "trisurf/permutation.hpp"
#include "trisurf/rng.hpp"

namespace trisurf {

/// Perfect matching on the 6N labeled triangle sides. 2N triangles carry the
/// sides 3k+1, 3k+2, 3k+3 in this cyclic (orientation) order.
class Pairing {
public:
    Pairing(int n_half_sides, std::vector<std::pair<int, int>> pairs)
        : n_(n_half_sides), pairs_(std::move(pairs)) {
        if (n_ < 6 || n_ % 6 != 0) throw std::invalid_argument("Pairing: side count must be a positive multiple of 6");
        if (pairs_.size() != static_cast<std::size_t>(n_) / 2) throw std::invalid_argument("Pairing: wrong number of pairs");
        partner_.assign(n_ + 1, 0);
        for (auto& [a, b] : pairs_) {
            if (a > b) std::swap(a, b);
            if (a < 1 || b > n_ || a == b) throw std::invalid_argument("Pairing: label out of range");
            if (partner_[a] || partner_[b]) throw std::invalid_argument("Pairing: label appears twice");
            partner_[a] = b;
            partner_[b] = a;
        }
        std::sort(pairs_.begin(), pairs_.end());
    }

    int n_half_sides() const { return n_; }
    int triangle_pair_count() const { return n_ / 6; }  // N; the surface has 2N triangles
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int partner(int side) const { return partner_[side]; }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [a, b] : pairs_) arr.push_back({a, b});
        return arr;
    }

    static Pairing from_json(const nlohmann::json& arr) {
        std::vector<std::pair<int, int>> ps;
        for (const auto& e : arr) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("Pairing: expected an array of [a,b] pairs");
            ps.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        const int n = static_cast<int>(ps.size()) * 2;
        return Pairing(n, std::move(ps));
    }

private:
    int n_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> partner_;
};

/// The fixed side rotation (1 2 3)(4 5 6)...(6N-2 6N-1 6N): cyclic successor
/// of each side within its triangle.
inline Permutation triangle_rotation(int N) {
    if (N < 1) throw std::invalid_argument("triangle_rotation: N must be >= 1");
    std::vector<int> im(6 * N);
    for (int k = 0; k < 2 * N; ++k) {
        im[3 * k + 0] = 3 * k + 2;
        im[3 * k + 1] = 3 * k + 3;
        im[3 * k + 2] = 3 * k + 1;
    }
    return Permutation(std::move(im));
}

/// Fixed-point-free involution whose 2-cycles are the pairs of p.
inline Permutation gluing_involution(const Pairing& p) {
    std::vector<int> im(p.n_half_sides());
    for (int i = 1; i <= p.n_half_sides(); ++i) im[i - 1] = p.partner(i);
    return Permutation(std::move(im));
}

/// Uniform random matching: shuffle 1..6N, pair consecutive entries. Each
/// matching arises from the same number (3N)! * 2^(3N) of orders, so the
/// result is exactly uniform. Deterministic in (N, seed).
inline Pairing sample_pairing(int N, std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("sample_pairing: N must be >= 1");
    std::vector<int> labels(6 * N);
    std::iota(labels.begin(), labels.end(), 1);
    StreamRng rng(seed);
    rng.shuffle(labels);
    std::vector<std::pair<int, int>> ps;
    ps.reserve(3 * N);
    for (int i = 0; i < 6 * N; i += 2) ps.emplace_back(labels[i], labels[i + 1]);
    return Pairing(6 * N, std::move(ps));
}

/// Sample i of a seeded run; see derive_stream_seed for the splitting rule.
inline Pairing sample_pairing_indexed(int N, std::uint64_t seed, std::uint64_t index) {
    return sample_pairing(N, derive_stream_seed(seed, index));
}

}  // namespace trisurf
