#pragma once

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trisurf/numeric.hpp"
#include "trisurf/word.hpp"

namespace trisurf {

/// Integer partition: weakly decreasing positive parts.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        std::sort(parts.rbegin(), parts.rend());
        for (int x : parts)
            if (x < 1) throw std::invalid_argument("Partition: parts must be positive");
    }

    int n() const {
        int s = 0;
        for (int x : parts) s += x;
        return s;
    }
    int rows() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }

    /// (arm, 1^leg)
    static Partition hook(int arm, int leg) {
        if (arm < 1 || leg < 0) throw std::invalid_argument("Partition::hook: need arm >= 1, leg >= 0");
        std::vector<int> p(leg + 1, 1);
        p[0] = arm;
        return Partition(std::move(p));
    }

    /// m^count
    static Partition rectangular(int m, int count) {
        if (m < 1 || count < 0) throw std::invalid_argument("Partition::rectangular: need m >= 1, count >= 0");
        return Partition(std::vector<int>(count, m));
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }
};

inline std::vector<std::vector<int>> hook_lengths(const Partition& lambda) {
    const auto& p = lambda.parts;
    std::vector<std::vector<int>> h(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        h[i].resize(p[i]);
        for (int j = 0; j < p[i]; ++j) {
            int below = 0;
            for (std::size_t k = i + 1; k < p.size() && p[k] > j; ++k) ++below;
            h[i][j] = p[i] - j + below;
        }
    }
    return h;
}

/// Hook length formula: n! / product of hook lengths.
inline BigInt dimension(const Partition& lambda) {
    BigInt d = factorial(lambda.n());
    for (const auto& row : hook_lengths(lambda))
        for (int h : row) d /= h;
    return d;
}

/// |K(mu)| = n! / (prod_i i^{a_i} a_i!) where a_i is the number of parts i.
inline BigInt class_size(const Partition& mu) {
    BigInt z = 1;
    int run = 0;
    for (std::size_t i = 0; i < mu.parts.size(); ++i) {
        z *= mu.parts[i];
        ++run;
        if (i + 1 == mu.parts.size() || mu.parts[i + 1] != mu.parts[i]) {
            z *= factorial(run);
            run = 0;
        }
    }
    return factorial(mu.n()) / z;
}

inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int max_part) -> void {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

namespace detail {

/// Character of the hook (arm, 1^leg) on the class m^k, in closed form. Rim
/// m-hooks of a hook are removed from the row end (sign +) or the column end
/// (sign (-1)^(m-1)) and hooks stay hooks, so the recursion counts lattice
/// paths to the unique size-m hook with the right arm residue.
inline BigInt hook_char_on_rectangular(int arm, int leg, int m) {
    const int arm0 = (arm - 1) % m + 1;
    const int leg0 = m - arm0;
    if (leg < leg0) return 0;
    const int s = (arm - arm0) / m;
    const int t = (leg - leg0) / m;
    BigInt v = binomial(s + t, s);
    if (leg0 % 2 != 0) v = -v;
    if (m % 2 == 0 && t % 2 != 0) v = -v;
    return v;
}

struct BetaKey {
    std::vector<int> beads;
    int index;
    bool operator==(const BetaKey&) const = default;
};

struct BetaKeyHash {
    std::size_t operator()(const BetaKey& k) const {
        std::size_t h = k.index;
        for (int b : k.beads) h = h * 1000003u + static_cast<std::size_t>(b);
        return h;
    }
};

}  // namespace detail

/// Murnaghan-Nakayama evaluation of the irreducible character chi^lambda on
/// the class of cycle type mu. Beads encode first-column hook lengths; moving
/// a bead down by m removes a rim m-hook, with sign the parity of the beads
/// jumped over. Parts of mu are consumed largest first, memoized per call.
inline BigInt mn_character(const Partition& lambda, const Partition& mu) {
    if (lambda.n() != mu.n()) throw std::invalid_argument("mn_character: |lambda| != |mu|");
    if (lambda.empty()) return 1;

    const int L = lambda.rows();
    std::vector<int> beads(L);  // ascending, distinct
    for (int i = 0; i < L; ++i) beads[i] = lambda.parts[L - 1 - i] + i;

    std::unordered_map<detail::BetaKey, BigInt, detail::BetaKeyHash> memo;

    auto rec = [&](auto&& self, std::vector<int>& B, int idx) -> BigInt {
        if (idx == mu.rows()) return 1;

        // Closed form once the diagram is a hook and the remaining parts of mu
        // are all equal.
        if (mu.parts[idx] == mu.parts.back()) {
            int arm = -1, leg = 0;
            bool is_hook = true;
            for (int i = 0; i < L; ++i) {
                const int part = B[i] - i;
                if (part == 0) continue;
                if (i == L - 1) {
                    arm = part;
                } else if (part == 1) {
                    ++leg;
                } else {
                    is_hook = false;
                    break;
                }
            }
            if (is_hook && arm >= 1) return detail::hook_char_on_rectangular(arm, leg, mu.parts[idx]);
        }

        const detail::BetaKey key{B, idx};
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        const int m = mu.parts[idx];
        BigInt total = 0;
        for (int j = 0; j < L; ++j) {
            const int src = B[j];
            if (src < m) continue;
            const int dst = src - m;
            const auto lo = std::lower_bound(B.begin(), B.end(), dst);
            if (lo != B.end() && *lo == dst) continue;  // target occupied
            const int jumped = static_cast<int>(j - (lo - B.begin()));

            std::vector<int> next = B;
            next.erase(next.begin() + j);
            next.insert(std::lower_bound(next.begin(), next.end(), dst), dst);
            const BigInt sub = self(self, next, idx + 1);
            total += (jumped % 2 != 0) ? -sub : sub;
        }
        memo.emplace(key, total);
        return total;
    };

    return rec(rec, beads, 0);
}

/// Cycle types of the side-rotation and gluing classes once a word multiset is
/// fixed as labeled disjoint circuits: each fixed word contributes its left
/// and right turn counts as extra rotation cycles, and both permutations lose
/// the 2M glued-away labels.
struct RestrictedClasses {
    Partition rotation_shape;  // 3^(2N-M) together with l_w, r_w per fixed word
    Partition gluing_shape;    // 2^(3N-M)
    int ground_size = 0;       // 6N - 2M
};

inline RestrictedClasses restricted_classes(int N, const WordMultiset& ws) {
    if (N < 1) throw std::invalid_argument("restricted_classes: N must be >= 1");
    const int M = ws.total_size();
    if (2 * N - M < 0 || 3 * N - M < 1) throw std::invalid_argument("restricted_classes: word multiset too large for N");
    std::vector<int> rot(2 * N - M, 3);
    for (const auto& [c, mult] : ws.items)
        for (int i = 0; i < mult; ++i) {
            rot.push_back(c.l_count);
            rot.push_back(c.r_count);
        }
    RestrictedClasses r;
    r.rotation_shape = Partition(std::move(rot));
    r.gluing_shape = Partition::rectangular(2, 3 * N - M);
    r.ground_size = 6 * N - 2 * M;
    return r;
}

/// Character of the hook (G-p, 1^p) on the gluing class 2^(3N-M), G = 6N-2M:
/// (-1)^ceil(p/2) * binom(3N-M-1, floor(p/2)).
inline BigInt hook_char_gluing(int p, int N, int M) {
    const int G = 6 * N - 2 * M;
    if (p < 0 || p > G - 1) throw std::invalid_argument("hook_char_gluing: p out of range");
    BigInt v = binomial(3 * N - M - 1, p / 2);
    return ((p + 1) / 2) % 2 != 0 ? -v : v;
}

/// Character of the hook (G-p, 1^p) on the restricted rotation class. For a
/// nonempty word multiset this peels the 3-cycles off the hook first, leaving
/// a sum of hook characters of the turn-cycle class K_M; for the empty
/// multiset it is the plain Murnaghan-Nakayama value.
inline BigInt hook_char_rotation(int p, int N, const WordMultiset& ws) {
    const int M = ws.total_size();
    const int G = 6 * N - 2 * M;
    if (p < 0 || p > G - 1) throw std::invalid_argument("hook_char_rotation: p out of range");
    if (M == 0) return mn_character(Partition::hook(G - p, p), Partition::rectangular(3, 2 * N));

    std::vector<int> turn_parts;
    for (const auto& [c, mult] : ws.items)
        for (int i = 0; i < mult; ++i) {
            turn_parts.push_back(c.l_count);
            turn_parts.push_back(c.r_count);
        }
    const Partition turn_class{std::move(turn_parts)};

    BigInt total = 0;
    for (int r = p % 3; r <= std::min(M - 1, p); r += 3)
        total += mn_character(Partition::hook(M - r, r), turn_class) * binomial(2 * N - M, (p - r) / 3);
    return total;
}

/// Normalized character sum over hook shapes whose value governs the number
/// of gluings with a single left-hand-turn cycle; tends to 2 as N grows.
inline BigRat single_cycle_char_sum(int N, const WordMultiset& ws) {
    const auto rc = restricted_classes(N, ws);
    const int G = rc.ground_size;
    const int M = ws.total_size();
    BigRat s = 0;
    for (int p = 0; p <= G - 1; ++p) {
        BigInt num = hook_char_gluing(p, N, M) * hook_char_rotation(p, N, ws);
        if (p % 2 != 0) num = -num;
        s += BigRat(num, binomial(G - 1, p));
    }
    return s;
}

/// Count of gluings of maximal genus containing the fixed words, with the
/// rotation fixed: exact value, the character sum it came from, and the
/// (G-1)!! / (3N-M) large-N equivalent.
struct MaxGenusCount {
    BigInt exact;
    BigRat char_sum;
    BigRat asymptotic;

    double asymptotic_double() const { return to_double(asymptotic); }
};

inline MaxGenusCount max_genus_count(int N, const WordMultiset& ws) {
    const auto rc = restricted_classes(N, ws);
    const int G = rc.ground_size;
    MaxGenusCount r;
    r.char_sum = single_cycle_char_sum(N, ws);
    // |K_2| * |K(G)| / G! * s = |K_2| * s / G.
    const BigRat exact = BigRat(class_size(rc.gluing_shape), G) * r.char_sum;
    if (denominator(exact) != 1 || numerator(exact) < 0)
        throw std::logic_error("max_genus_count: character sum did not produce a non-negative integer");
    r.exact = numerator(exact);
    r.asymptotic = BigRat(perfect_matching_count(G), 3 * N - ws.total_size());
    return r;
}

/// Probability that a uniform gluing with the words fixed has one left-hand-
/// turn cycle, i.e. genus (N+1)/2: exact / |K_2|.
inline BigRat max_genus_probability(int N, const WordMultiset& ws) {
    const auto rc = restricted_classes(N, ws);
    return BigRat(max_genus_count(N, ws).exact, class_size(rc.gluing_shape));
}

}  // namespace trisurf
