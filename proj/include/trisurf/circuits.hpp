#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "trisurf/fat_graph.hpp"
#include "trisurf/word.hpp"

namespace trisurf {

/// Closed non-backtracking walk using each undirected edge at most once,
/// recorded up to rotation and direction reversal. steps[i] is the half-edge
/// the walk leaves through; word[i] is the turn taken at the vertex where step
/// i arrives (exit through rotation(arrival) is 'L', through rotation^2 is 'R').
struct Circuit {
    std::vector<int> steps;
    Word word;

    int length() const { return static_cast<int>(steps.size()); }
};

/// All circuits of length <= max_len, each exactly once. A circuit touches
/// every undirected edge in one direction only, so among its 2*length directed
/// traversals exactly one starts at the smallest participating half-edge
/// label; the DFS emits that representative and rejects the rest.
inline std::vector<Circuit> enumerate_circuits(const FatGraph& g, int max_len) {
    if (max_len < 1) throw std::invalid_argument("enumerate_circuits: max_len must be >= 1");
    std::vector<Circuit> out;
    std::vector<bool> used(g.n_edges(), false);
    std::vector<int> steps;
    Word word;

    auto dfs = [&](auto&& self, int start, int arrival) -> void {
        for (char turn : {'L', 'R'}) {
            const int exit = (turn == 'L') ? g.next(arrival) : g.next2(arrival);
            if (exit == start) {
                word.push_back(turn);
                out.push_back({steps, word});
                word.pop_back();
                continue;
            }
            if (static_cast<int>(steps.size()) == max_len) continue;
            if (exit < start || g.partner(exit) < start) continue;
            const int e = g.edge_of(exit);
            if (used[e]) continue;
            used[e] = true;
            steps.push_back(exit);
            word.push_back(turn);
            self(self, start, g.partner(exit));
            word.pop_back();
            steps.pop_back();
            used[e] = false;
        }
    };

    for (int h = 1; h <= g.n_half_edges(); ++h) {
        if (g.partner(h) < h) continue;  // smallest label of its edge starts
        used[g.edge_of(h)] = true;
        steps.push_back(h);
        dfs(dfs, h, g.partner(h));
        steps.pop_back();
        used[g.edge_of(h)] = false;
    }
    return out;
}

/// Number of circuits of length |w| carrying the given class.
inline long long count_word(const FatGraph& g, const WordClass& c) {
    if (c.is_left_turn_type()) throw std::invalid_argument("count_word: single-letter classes are left-hand-turn cycles, not circuits");
    long long n = 0;
    for (const auto& circ : enumerate_circuits(g, c.length))
        if (circ.length() == c.length &&
            std::binary_search(c.members.begin(), c.members.end(), circ.word))
            ++n;
    return n;
}

/// Lengths of the left-hand-turn cycles, descending; they sum to the number
/// of half-edges.
inline std::vector<int> left_turn_word_lengths(const FatGraph& g) {
    std::vector<int> lens;
    for (const auto& c : left_turn_cycles(g.rotation(), g.edge_map())) lens.push_back(static_cast<int>(c.size()));
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

/// Smallest trace in [3, trace_cap] realized by some circuit. Mixed words of
/// length l have trace >= l+1, so circuits longer than trace_cap - 1 cannot
/// contribute.
inline std::optional<int> min_essential_trace(const FatGraph& g, int trace_cap) {
    if (trace_cap < 3) throw std::invalid_argument("min_essential_trace: trace_cap must be >= 3");
    std::optional<int> best;
    for (const auto& circ : enumerate_circuits(g, trace_cap - 1)) {
        const auto [l, r] = turn_counts(circ.word);
        if (l == 0 || r == 0) continue;
        const std::int64_t tr = word_trace(circ.word);
        if (tr <= trace_cap && (!best || tr < *best)) best = static_cast<int>(tr);
    }
    return best;
}

/// True iff deleting the circuit's undirected edges increases the number of
/// connected components.
inline bool is_separating(const FatGraph& g, const Circuit& c) {
    std::vector<bool> removed(g.n_edges(), false);
    for (int h : c.steps) removed[g.edge_of(h)] = true;

    auto component_count = [&](bool use_removed) {
        std::vector<int> comp(g.n_vertices(), -1);
        int n = 0;
        for (int s = 0; s < g.n_vertices(); ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = n;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int h : g.vertices()[v]) {
                    if (use_removed && removed[g.edge_of(h)]) continue;
                    int w = g.vertex_of(g.partner(h));
                    if (comp[w] < 0) {
                        comp[w] = n;
                        stack.push_back(w);
                    }
                }
            }
            ++n;
        }
        return n;
    };
    return component_count(true) > component_count(false);
}

/// Joint circuit counts for a set of classes on one graph.
struct CensusResult {
    std::map<Word, long long> counts;  // keyed by class representative
    std::optional<int> min_trace;
    std::vector<int> left_turn_lengths;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["counts"] = nlohmann::ordered_json::object();
        for (const auto& [rep, n] : counts) j["counts"][rep] = n;
        if (min_trace)
            j["min_trace"] = *min_trace;
        else
            j["min_trace"] = nullptr;
        j["lht"] = left_turn_lengths;
        return j;
    }
};

inline CensusResult circuit_census(const FatGraph& g, const std::vector<WordClass>& classes,
                                   std::optional<int> trace_cap = std::nullopt) {
    if (trace_cap && *trace_cap < 3) throw std::invalid_argument("circuit_census: trace_cap must be >= 3");
    CensusResult r;
    int max_len = 0;
    for (const auto& c : classes) {
        if (c.is_left_turn_type()) throw std::invalid_argument("circuit_census: single-letter classes are excluded");
        max_len = std::max(max_len, c.length);
        r.counts[c.representative] = 0;
    }
    if (trace_cap) max_len = std::max(max_len, *trace_cap - 1);

    if (max_len > 0) {
        for (const auto& circ : enumerate_circuits(g, max_len)) {
            for (const auto& c : classes)
                if (circ.length() == c.length &&
                    std::binary_search(c.members.begin(), c.members.end(), circ.word))
                    r.counts[c.representative]++;
            if (trace_cap) {
                const auto [l, rr] = turn_counts(circ.word);
                if (l > 0 && rr > 0) {
                    const std::int64_t tr = word_trace(circ.word);
                    if (tr <= *trace_cap && (!r.min_trace || tr < *r.min_trace)) r.min_trace = static_cast<int>(tr);
                }
            }
        }
    }
    r.left_turn_lengths = left_turn_word_lengths(g);
    return r;
}

}  // namespace trisurf
