#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trisurf {

/// Permutation of {1, ..., n}. Immutable; the cycle decomposition is computed
/// at construction (each cycle listed from its smallest element, cycles sorted
/// by that element).
class Permutation {
public:
    /// images[i-1] is the image of i.
    explicit Permutation(std::vector<int> images) {
        const int n = static_cast<int>(images.size());
        img_.assign(n + 1, 0);
        std::vector<bool> seen(n + 1, false);
        for (int i = 1; i <= n; ++i) {
            int v = images[i - 1];
            if (v < 1 || v > n || seen[v]) throw std::invalid_argument("Permutation: images are not a bijection on {1..n}");
            seen[v] = true;
            img_[i] = v;
        }
        build_cycles();
    }

    static Permutation identity(int n) {
        std::vector<int> im(n);
        for (int i = 0; i < n; ++i) im[i] = i + 1;
        return Permutation(std::move(im));
    }

    static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> im(n);
        for (int i = 0; i < n; ++i) im[i] = i + 1;
        for (const auto& c : cycles) {
            for (std::size_t j = 0; j < c.size(); ++j) {
                int a = c[j], b = c[(j + 1) % c.size()];
                if (a < 1 || a > n) throw std::invalid_argument("Permutation::from_cycles: label out of range");
                im[a - 1] = b;
            }
        }
        return Permutation(std::move(im));
    }

    int n() const { return static_cast<int>(img_.size()) - 1; }

    int operator()(int i) const { return img_[i]; }
    int apply(int i) const { return img_[i]; }

    const std::vector<std::vector<int>>& cycles() const { return cycles_; }

    /// Cycle lengths, sorted descending.
    std::vector<int> cycle_type() const {
        std::vector<int> t;
        t.reserve(cycles_.size());
        for (const auto& c : cycles_) t.push_back(static_cast<int>(c.size()));
        std::sort(t.rbegin(), t.rend());
        return t;
    }

    int sign() const { return (n() - static_cast<int>(cycles_.size())) % 2 ? -1 : 1; }

    bool is_fixed_point_free_involution() const {
        if (n() % 2 != 0 || cycles_.size() != static_cast<std::size_t>(n()) / 2) return false;
        for (const auto& c : cycles_)
            if (c.size() != 2) return false;
        return true;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }

private:
    void build_cycles() {
        const int n = this->n();
        std::vector<bool> done(n + 1, false);
        for (int i = 1; i <= n; ++i) {
            if (done[i]) continue;
            std::vector<int> c;
            for (int j = i; !done[j]; j = img_[j]) {
                done[j] = true;
                c.push_back(j);
            }
            cycles_.push_back(std::move(c));
        }
    }

    std::vector<int> img_;
    std::vector<std::vector<int>> cycles_;
};

/// Composite "apply inner first, then outer": (outer * inner)(x) = outer(inner(x)).
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.n() != inner.n()) throw std::invalid_argument("compose: permutations act on different ground sets");
    std::vector<int> im(outer.n());
    for (int i = 1; i <= outer.n(); ++i) im[i - 1] = outer(inner(i));
    return Permutation(std::move(im));
}

}  // namespace trisurf
