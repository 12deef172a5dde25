#pragma once

#include <bit>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "trisurf/characters.hpp"
#include "trisurf/circuits.hpp"
#include "trisurf/fat_graph.hpp"
#include "trisurf/numeric.hpp"
#include "trisurf/pairing.hpp"
#include "trisurf/word.hpp"

namespace trisurf {

constexpr int kMaxExhaustiveN = 3;          // (6N-1)!! pairings
constexpr int kMaxBruteGroundSize = 18;     // (G-1)!! involutions

inline BigInt pairing_space_size(int N) { return perfect_matching_count(6 * N); }

namespace detail {

/// Matchings of the given labels, smallest unmatched label first. The sink
/// sees each matching once, as a vector of (a, b) pairs with a < b.
template <class Sink>
void enumerate_matchings_masked(const std::vector<int>& labels, std::uint32_t used,
                                std::vector<std::pair<int, int>>& acc, Sink&& sink) {
    const int n = static_cast<int>(labels.size());
    const std::uint32_t full = (n == 32) ? ~0u : (1u << n) - 1;
    if ((used & full) == full) {
        sink(acc);
        return;
    }
    const int i = std::countr_zero(~used & full);
    used |= 1u << i;
    for (int j = i + 1; j < n; ++j) {
        if (used >> j & 1) continue;
        acc.emplace_back(labels[i], labels[j]);
        enumerate_matchings_masked(labels, used | (1u << j), acc, sink);
        acc.pop_back();
    }
}

template <class Sink>
void enumerate_matchings(const std::vector<int>& labels, std::vector<std::pair<int, int>>& acc, Sink&& sink) {
    if (labels.size() > 30) throw std::invalid_argument("enumerate_matchings: label set too large");
    enumerate_matchings_masked(labels, 0u, acc, sink);
}

/// Splits the enumeration on the mate of the smallest label and runs branches
/// as async tasks. Results merge associatively, so the outcome does not depend
/// on scheduling.
template <class Result, class Branch>
Result parallel_over_first_mate(int n_labels, Branch&& branch, Result init) {
    std::vector<std::future<Result>> futs;
    for (int mate = 2; mate <= n_labels; ++mate)
        futs.push_back(std::async(std::launch::async, [&branch, mate] { return branch(mate); }));
    Result total = std::move(init);
    for (auto& f : futs) total.merge(f.get());
    return total;
}

}  // namespace detail

/// Every perfect matching of {1..6N}, exactly once. Refused above N = 3.
template <class Sink>
void enumerate_all_pairings(int N, Sink&& sink) {
    if (N < 1) throw std::invalid_argument("enumerate_all_pairings: N must be >= 1");
    if (N > kMaxExhaustiveN)
        throw std::invalid_argument("enumerate_all_pairings: refused, would require " +
                                    pairing_space_size(N).str() + " pairings (guard: N <= 3)");
    std::vector<int> labels(6 * N);
    std::iota(labels.begin(), labels.end(), 1);
    std::vector<std::pair<int, int>> acc;
    acc.reserve(3 * N);
    detail::enumerate_matchings(labels, acc, sink);
}

struct ExhaustiveReport {
    int N = 0;
    BigInt total_pairings;
    std::map<int, long long> genus_histogram;  // connected surfaces only
    long long disconnected = 0;
    std::vector<Word> class_reps;                           // column order of joint_counts keys
    std::map<std::pair<int, std::vector<long long>>, long long> joint_counts;  // (genus, Z-vector) -> count; genus -1 = disconnected

    void merge(const ExhaustiveReport& o) {
        disconnected += o.disconnected;
        for (const auto& [g, c] : o.genus_histogram) genus_histogram[g] += c;
        for (const auto& [k, c] : o.joint_counts) joint_counts[k] += c;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["N"] = N;
        j["total_pairings"] = total_pairings.str();
        j["genus_histogram"] = nlohmann::ordered_json::object();
        for (const auto& [g, c] : genus_histogram) j["genus_histogram"][std::to_string(g)] = c;
        j["disconnected"] = disconnected;
        if (!class_reps.empty()) {
            j["words"] = class_reps;
            j["joint_counts"] = nlohmann::ordered_json::array();
            for (const auto& [k, c] : joint_counts) {
                nlohmann::ordered_json row;
                row["genus"] = k.first == -1 ? nlohmann::ordered_json() : nlohmann::ordered_json(k.first);
                row["z"] = k.second;
                row["count"] = c;
                j["joint_counts"].push_back(row);
            }
        }
        return j;
    }
};

namespace detail {

/// Genus of the glued-up surface for one matching, or -1 if disconnected.
/// Works on raw pair lists to keep the exhaustive scans allocation-free.
inline int connected_genus(int N, const std::vector<std::pair<int, int>>& pairs) {
    const int n = 6 * N;
    int partner[6 * kMaxExhaustiveN + 1];
    for (const auto& [a, b] : pairs) {
        partner[a] = b;
        partner[b] = a;
    }

    // union-find over the 2N triangles
    int parent[2 * kMaxExhaustiveN];
    for (int v = 0; v < 2 * N; ++v) parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    int comps = 2 * N;
    for (const auto& [a, b] : pairs) {
        int ra = find((a - 1) / 3), rb = find((b - 1) / 3);
        if (ra != rb) {
            parent[ra] = rb;
            --comps;
        }
    }
    if (comps != 1) return -1;

    bool seen[6 * kMaxExhaustiveN + 1] = {};
    int lht = 0;
    for (int h = 1; h <= n; ++h) {
        if (seen[h]) continue;
        ++lht;
        for (int j = h; !seen[j];) {
            seen[j] = true;
            const int t = partner[j];
            j = (t % 3 == 0) ? t - 2 : t + 1;  // rotation after gluing
        }
    }
    return (2 + N - lht) / 2;
}

}  // namespace detail

/// Exact genus law by full enumeration of (6N-1)!! pairings.
inline ExhaustiveReport exact_genus_distribution(int N) {
    if (N < 1 || N > kMaxExhaustiveN)
        throw std::invalid_argument("exact_genus_distribution: guard N <= 3 (space has " +
                                    pairing_space_size(N).str() + " points)");
    auto branch = [N](int first_mate) {
        ExhaustiveReport r;
        std::vector<int> labels;
        for (int i = 2; i <= 6 * N; ++i)
            if (i != first_mate) labels.push_back(i);
        std::vector<std::pair<int, int>> acc{{1, first_mate}};
        detail::enumerate_matchings(labels, acc, [&](const std::vector<std::pair<int, int>>& ps) {
            const int g = detail::connected_genus(N, ps);
            if (g < 0)
                ++r.disconnected;
            else
                ++r.genus_histogram[g];
        });
        return r;
    };
    ExhaustiveReport total = detail::parallel_over_first_mate(6 * N, branch, ExhaustiveReport{});
    total.N = N;
    total.total_pairings = pairing_space_size(N);
    return total;
}

/// Joint law of (genus, circuit counts) for the given classes.
inline ExhaustiveReport exact_joint_census(int N, const std::vector<WordClass>& classes) {
    if (N < 1 || N > kMaxExhaustiveN)
        throw std::invalid_argument("exact_joint_census: guard N <= 3 (space has " +
                                    pairing_space_size(N).str() + " points)");
    auto branch = [N, &classes](int first_mate) {
        ExhaustiveReport r;
        std::vector<int> labels;
        for (int i = 2; i <= 6 * N; ++i)
            if (i != first_mate) labels.push_back(i);
        std::vector<std::pair<int, int>> acc{{1, first_mate}};
        detail::enumerate_matchings(labels, acc, [&](const std::vector<std::pair<int, int>>& ps) {
            const int g = detail::connected_genus(N, ps);
            if (g < 0)
                ++r.disconnected;
            else
                ++r.genus_histogram[g];
            const FatGraph fg = fat_graph(Pairing(6 * N, ps));
            const CensusResult census = circuit_census(fg, classes);
            std::vector<long long> z;
            z.reserve(classes.size());
            for (const auto& c : classes) z.push_back(census.counts.at(c.representative));
            ++r.joint_counts[{g, std::move(z)}];
        });
        return r;
    };
    ExhaustiveReport total = detail::parallel_over_first_mate(6 * N, branch, ExhaustiveReport{});
    total.N = N;
    total.total_pairings = pairing_space_size(N);
    for (const auto& c : classes) total.class_reps.push_back(c.representative);
    return total;
}

/// E[ prod_w (Z_w)_(m_w) | genus in D ] as an exact ratio over the conditioned
/// set of pairings. D must have positive mass.
inline BigRat exact_conditional_moment(int N, const WordMultiset& ws, const std::set<int>& genus_set) {
    std::vector<WordClass> classes;
    for (const auto& [c, m] : ws.items) classes.push_back(c);
    const ExhaustiveReport rep = exact_joint_census(N, classes);

    BigInt hits = 0, weighted = 0;
    for (const auto& [key, count] : rep.joint_counts) {
        const auto& [g, z] = key;
        if (g < 0 || !genus_set.count(g)) continue;
        hits += count;
        BigInt prod = 1;
        for (std::size_t i = 0; i < ws.items.size(); ++i) {
            long long zi = z[i];
            for (int j = 0; j < ws.items[i].second; ++j) prod *= (zi - j);
        }
        weighted += prod * count;
    }
    if (hits == 0) throw std::domain_error("exact_conditional_moment: conditioning set has probability 0");
    return BigRat(weighted, hits);
}

/// n(N, W, m) by brute force: fix the canonical rotation in the restricted
/// class and count fixed-point-free involutions whose composite has a single
/// cycle. The rotation takes the 3-cycles first, then an l-cycle and an
/// r-cycle per fixed word.
inline long long brute_max_genus_count(int N, const WordMultiset& ws) {
    if (N < 1 || N % 2 == 0) throw std::invalid_argument("brute_max_genus_count: N must be odd (single cycles need odd N)");
    const int M = ws.total_size();
    const int G = 6 * N - 2 * M;
    if (2 * N - M < 0) throw std::invalid_argument("brute_max_genus_count: word multiset too large for N");
    if (G > kMaxBruteGroundSize)
        throw std::invalid_argument("brute_max_genus_count: refused, would enumerate " +
                                    perfect_matching_count(G).str() + " involutions (guard: 6N-2M <= 18)");

    int sigma[kMaxBruteGroundSize + 1];
    int next_label = 1;
    auto add_cycle = [&](int len) {
        for (int i = 0; i < len; ++i) sigma[next_label + i] = next_label + (i + 1) % len;
        next_label += len;
    };
    for (int k = 0; k < 2 * N - M; ++k) add_cycle(3);
    for (const auto& [c, mult] : ws.items)
        for (int i = 0; i < mult; ++i) {
            add_cycle(c.l_count);
            add_cycle(c.r_count);
        }

    struct Counter {
        long long n = 0;
        void merge(const Counter& o) { n += o.n; }
    };
    auto branch = [&sigma, G](int first_mate) {
        Counter ctr;
        std::vector<int> labels;
        for (int i = 2; i <= G; ++i)
            if (i != first_mate) labels.push_back(i);
        std::vector<std::pair<int, int>> acc{{1, first_mate}};
        int partner[kMaxBruteGroundSize + 1];
        detail::enumerate_matchings(labels, acc, [&](const std::vector<std::pair<int, int>>& ps) {
            for (const auto& [a, b] : ps) {
                partner[a] = b;
                partner[b] = a;
            }
            // single cycle iff the orbit of 1 under sigma(partner(.)) has length G
            int len = 0, j = 1;
            do {
                j = sigma[partner[j]];
                ++len;
            } while (j != 1);
            if (len == G) ++ctr.n;
        });
        return ctr;
    };
    return detail::parallel_over_first_mate(G, branch, Counter{}).n;
}

}  // namespace trisurf
