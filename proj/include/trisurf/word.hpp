#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "trisurf/numeric.hpp"

namespace trisurf {

/// Turn word: a string over {'L', 'R'}.
using Word = std::string;

inline void validate_word(const Word& w) {
    for (char c : w)
        if (c != 'L' && c != 'R') throw std::invalid_argument("word letters must be 'L' or 'R'");
}

struct Mat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;  // [[a,b],[c,d]]
};

/// Ordered product of the letter matrices L = [[1,1],[0,1]], R = [[1,0],[1,1]].
/// Entries grow like the golden ratio to the word length; lengths beyond 80
/// are rejected rather than silently overflowed.
inline Mat2 holonomy_matrix(const Word& w) {
    validate_word(w);
    if (w.size() > 80) throw std::invalid_argument("holonomy_matrix: word too long for 64-bit entries");
    Mat2 m;
    for (char ch : w) {
        if (ch == 'L') {  // [[a, a+b],[c, c+d]]
            m.b += m.a;
            m.d += m.c;
        } else {  // [[a+b, b],[c+d, d]]
            m.a += m.b;
            m.c += m.d;
        }
    }
    return m;
}

inline std::int64_t word_trace(const Word& w) {
    const Mat2 m = holonomy_matrix(w);
    return m.a + m.d;
}

/// w read backwards with L and R exchanged. Involutive; matrix-wise this is
/// transposition, so the trace is preserved.
inline Word star(const Word& w) {
    validate_word(w);
    Word out(w.rbegin(), w.rend());
    for (char& c : out) c = (c == 'L') ? 'R' : 'L';
    return out;
}

inline std::pair<int, int> turn_counts(const Word& w) {
    validate_word(w);
    int l = static_cast<int>(std::count(w.begin(), w.end(), 'L'));
    return {l, static_cast<int>(w.size()) - l};
}

/// Equivalence class of a word: all cyclic rotations of w and of star(w).
struct WordClass {
    Word representative;         // lexicographic minimum of the class (L < R)
    std::vector<Word> members;   // sorted, distinct
    int length = 0;
    int l_count = 0;
    int r_count = 0;
    std::int64_t trace = 0;

    int class_size() const { return static_cast<int>(members.size()); }
    bool is_left_turn_type() const { return l_count == 0 || r_count == 0; }

    friend bool operator==(const WordClass& x, const WordClass& y) { return x.representative == y.representative; }
    friend bool operator<(const WordClass& x, const WordClass& y) { return x.representative < y.representative; }
};

inline WordClass class_of(const Word& w) {
    validate_word(w);
    if (w.empty()) throw std::invalid_argument("class_of: empty word");
    std::set<Word> members;
    for (Word u : {w, star(w)}) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            members.insert(u);
            std::rotate(u.begin(), u.begin() + 1, u.end());
        }
    }
    WordClass c;
    c.representative = *members.begin();
    c.members.assign(members.begin(), members.end());
    c.length = static_cast<int>(w.size());
    std::tie(c.l_count, c.r_count) = turn_counts(w);
    c.trace = word_trace(w);
    return c;
}

/// Limit intensity of the count of circuits carrying this class: |[w]| / (2|w|).
inline BigRat poisson_mean(const WordClass& c) {
    return BigRat(c.class_size(), 2 * c.length);
}

/// 2 arcosh(tr/2); defined for essential classes (trace >= 3) only.
inline double hyperbolic_length(const WordClass& c) {
    if (c.trace < 3) throw std::domain_error("hyperbolic_length: cusp word (trace 2) has no closed geodesic");
    return 2.0 * std::acosh(static_cast<double>(c.trace) / 2.0);
}

/// All classes of trace exactly k. Words containing both letters satisfy
/// tr(w) >= |w| + 1 and appending a letter never decreases the trace (it adds
/// an off-diagonal entry), so the search over lengths <= k-1 with pruning at
/// trace > k is exhaustive.
inline std::vector<WordClass> classes_with_trace(int k) {
    if (k < 3) throw std::invalid_argument("classes_with_trace: k must be >= 3");
    std::set<Word> reps;
    std::vector<WordClass> out;
    Word w;
    auto dfs = [&](auto&& self, const Mat2& m) -> void {
        if (!w.empty()) {
            const std::int64_t tr = m.a + m.d;
            if (tr > k) return;
            if (tr == k && m.b > 0 && m.c > 0) {  // both letters present
                WordClass c = class_of(w);
                if (reps.insert(c.representative).second) out.push_back(std::move(c));
            }
        }
        if (static_cast<int>(w.size()) >= k - 1) return;
        for (char ch : {'L', 'R'}) {
            Mat2 next = m;
            if (ch == 'L') {
                next.b += next.a;
                next.d += next.c;
            } else {
                next.a += next.b;
                next.c += next.d;
            }
            w.push_back(ch);
            self(self, next);
            w.pop_back();
        }
    };
    dfs(dfs, Mat2{});
    std::sort(out.begin(), out.end());
    return out;
}

/// All classes of words containing both letters, up to the given length.
inline std::vector<WordClass> classes_up_to_length(int max_len) {
    std::set<Word> reps;
    std::vector<WordClass> out;
    for (int len = 2; len <= max_len; ++len) {
        for (std::uint32_t bits = 1; bits + 1 < (1u << len); ++bits) {
            Word w(len, 'L');
            for (int i = 0; i < len; ++i)
                if (bits >> i & 1) w[i] = 'R';
            WordClass c = class_of(w);
            if (reps.insert(c.representative).second) out.push_back(std::move(c));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Finite multiset of essential word classes with multiplicities.
struct WordMultiset {
    std::vector<std::pair<WordClass, int>> items;

    WordMultiset() = default;
    explicit WordMultiset(std::vector<std::pair<WordClass, int>> it) : items(std::move(it)) {
        std::set<Word> seen;
        for (const auto& [c, m] : items) {
            if (m < 1) throw std::invalid_argument("WordMultiset: multiplicities must be >= 1");
            if (c.is_left_turn_type()) throw std::invalid_argument("WordMultiset: classes of single-letter words are excluded");
            if (!seen.insert(c.representative).second) throw std::invalid_argument("WordMultiset: duplicate class");
        }
    }

    /// M = sum of multiplicity * length.
    int total_size() const {
        int m = 0;
        for (const auto& [c, mult] : items) m += mult * c.length;
        return m;
    }
};

}  // namespace trisurf
