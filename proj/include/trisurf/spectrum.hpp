#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "trisurf/characters.hpp"
#include "trisurf/circuits.hpp"
#include "trisurf/fat_graph.hpp"
#include "trisurf/numeric.hpp"
#include "trisurf/pairing.hpp"
#include "trisurf/word.hpp"

namespace trisurf {

/// Condition on the genus of a sampled surface. Window and max-genus filters
/// accept connected surfaces only.
struct GenusFilter {
    enum class Kind { All, Window, MaxGenus };
    Kind kind = Kind::All;
    int lo = 0, hi = 0;  // window bounds, inclusive
    bool clipped = false;

    static GenusFilter all() { return {}; }
    static GenusFilter max_genus() { return {Kind::MaxGenus}; }
    static GenusFilter window(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("GenusFilter::window: lo > hi");
        return {Kind::Window, lo, hi};
    }

    bool accepts(const SurfaceSummary& s) const {
        switch (kind) {
            case Kind::All:
                return true;
            case Kind::Window:
                return s.connected && *s.genus() >= lo && *s.genus() <= hi;
            case Kind::MaxGenus:
                return s.total_left_turn_cycles == 1;  // implies connected, genus (N+1)/2
        }
        return false;
    }

    std::string description() const {
        switch (kind) {
            case Kind::All:
                return "all";
            case Kind::Window: {
                std::ostringstream os;
                os << "genus in [" << lo << ", " << hi << "]" << (clipped ? " (clipped)" : "");
                return os.str();
            }
            case Kind::MaxGenus:
                return "maximal genus (single left-hand-turn cycle)";
        }
        return "";
    }
};

/// Integer genus window of width c1*sqrt(log 2N) around 1 + N/2 - log(2N)/2,
/// shifted by c2*sqrt(log 2N); the bulk of the genus distribution sits in
/// such windows. Clipped to the attainable range [0, (N+1)/2].
inline GenusFilter genus_window(int N, double c1, double c2 = 0.0) {
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("genus_window: N must be even and >= 2");
    if (c1 <= 0) throw std::invalid_argument("genus_window: c1 must be positive");
    const double spread = std::sqrt(std::log(2.0 * N));
    const double center = 1.0 + N / 2.0 - std::log(2.0 * N) / 2.0 + c2 * spread;
    int lo = static_cast<int>(std::ceil(center - c1 * spread / 2.0));
    int hi = static_cast<int>(std::floor(center + c1 * spread / 2.0));
    const int g_max = (N + 1) / 2;
    GenusFilter f = GenusFilter::window(std::min(std::max(lo, 0), g_max), std::min(std::max(hi, 0), g_max));
    f.clipped = (f.lo != lo || f.hi != hi);
    return f;
}

struct CensusOptions {
    long long samples = 0;
    std::uint64_t seed = 0;
    double acceptance_floor = 1e-4;
    int threads = 1;
};

/// Empirical law of the circuit counts of the given classes under a genus
/// filter. Histograms are over accepted samples; disjoint_pairs[i][j] is the
/// mean number of ordered pairs of edge-disjoint distinct circuits carrying
/// classes i and j (the finite-N stand-in for E[Z_i Z_j]).
struct CensusExperiment {
    int N = 0;
    std::uint64_t seed = 0;
    GenusFilter filter;
    long long samples_requested = 0;
    long long samples_accepted = 0;

    struct PerClass {
        WordClass cls;
        std::map<int, long long> histogram;
        double mean = 0.0;
        double std_error = 0.0;
    };
    std::vector<PerClass> classes;
    std::vector<std::vector<double>> disjoint_pairs;

    double acceptance_rate() const {
        return samples_requested ? static_cast<double>(samples_accepted) / static_cast<double>(samples_requested) : 0.0;
    }

    std::map<int, double> frequencies(std::size_t class_index) const {
        std::map<int, double> f;
        for (const auto& [k, c] : classes.at(class_index).histogram)
            f[k] = static_cast<double>(c) / static_cast<double>(samples_accepted);
        return f;
    }
};

namespace detail {

struct CensusAccum {
    long long accepted = 0;
    std::vector<std::map<int, long long>> hist;
    std::vector<long long> sum, sum_sq;  // integer totals: merge order cannot matter
    std::vector<std::vector<long long>> pair_sum;

    explicit CensusAccum(std::size_t k)
        : hist(k), sum(k, 0), sum_sq(k, 0), pair_sum(k, std::vector<long long>(k, 0)) {}

    void merge(const CensusAccum& o) {
        accepted += o.accepted;
        for (std::size_t i = 0; i < hist.size(); ++i) {
            for (const auto& [k, c] : o.hist[i]) hist[i][k] += c;
            sum[i] += o.sum[i];
            sum_sq[i] += o.sum_sq[i];
            for (std::size_t j = 0; j < hist.size(); ++j) pair_sum[i][j] += o.pair_sum[i][j];
        }
    }
};

}  // namespace detail

/// Rejection sampling: draw pairings from the per-index streams of the seed,
/// keep those the filter accepts, and census circuits on the kept ones. Aborts
/// if the acceptance rate ends up below the configured floor.
inline CensusExperiment run_census(int N, const std::vector<WordClass>& classes, const GenusFilter& filter,
                                   const CensusOptions& opt) {
    if (N < 1) throw std::invalid_argument("run_census: N must be >= 1");
    if (opt.samples < 1) throw std::invalid_argument("run_census: need at least one sample");
    if (filter.kind == GenusFilter::Kind::Window && N % 2 != 0)
        throw std::invalid_argument("run_census: window filters require even N");
    if (filter.kind == GenusFilter::Kind::MaxGenus && N % 2 == 0)
        throw std::invalid_argument("run_census: the max-genus filter requires odd N");
    for (const auto& c : classes)
        if (c.is_left_turn_type()) throw std::invalid_argument("run_census: single-letter classes are excluded");

    int max_len = 0;
    for (const auto& c : classes) max_len = std::max(max_len, c.length);
    const std::size_t k = classes.size();

    auto scan = [&](long long begin, long long end) {
        detail::CensusAccum acc(k);
        std::vector<std::vector<const Circuit*>> per_class(k);
        for (long long i = begin; i < end; ++i) {
            const Pairing p = sample_pairing_indexed(N, opt.seed, static_cast<std::uint64_t>(i));
            const SurfaceSummary s = surface_summary(p);
            if (!filter.accepts(s)) continue;
            ++acc.accepted;
            if (k == 0) continue;

            const FatGraph g = fat_graph(p);
            const auto circuits = enumerate_circuits(g, max_len);
            for (auto& v : per_class) v.clear();
            for (const auto& circ : circuits)
                for (std::size_t ci = 0; ci < k; ++ci)
                    if (circ.length() == classes[ci].length &&
                        std::binary_search(classes[ci].members.begin(), classes[ci].members.end(), circ.word))
                        per_class[ci].push_back(&circ);

            auto disjoint = [&g](const Circuit* a, const Circuit* b) {
                for (int ha : a->steps)
                    for (int hb : b->steps)
                        if (g.edge_of(ha) == g.edge_of(hb)) return false;
                return true;
            };
            for (std::size_t ci = 0; ci < k; ++ci) {
                const long long z = static_cast<long long>(per_class[ci].size());
                acc.hist[ci][static_cast<int>(z)]++;
                acc.sum[ci] += z;
                acc.sum_sq[ci] += z * z;
                for (std::size_t cj = 0; cj < k; ++cj) {
                    long long pairs = 0;
                    for (const Circuit* a : per_class[ci])
                        for (const Circuit* b : per_class[cj])
                            if (a != b && disjoint(a, b)) ++pairs;
                    acc.pair_sum[ci][cj] += pairs;
                }
            }
        }
        return acc;
    };

    detail::CensusAccum total(k);
    const int workers = std::max(1, opt.threads);
    if (workers == 1) {
        total = scan(0, opt.samples);
    } else {
        std::vector<detail::CensusAccum> parts(workers, detail::CensusAccum(k));
        std::vector<std::thread> pool;
        const long long chunk = (opt.samples + workers - 1) / workers;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                const long long b = w * chunk, e = std::min<long long>(opt.samples, (w + 1) * chunk);
                if (b < e) parts[w] = scan(b, e);
            });
        for (auto& t : pool) t.join();
        for (const auto& part : parts) total.merge(part);
    }

    const double rate = static_cast<double>(total.accepted) / static_cast<double>(opt.samples);
    if (total.accepted == 0 || rate < opt.acceptance_floor) {
        std::ostringstream os;
        os << "run_census: acceptance rate " << rate << " below floor " << opt.acceptance_floor
           << " for filter '" << filter.description() << "' at N=" << N
           << " (the conditioning set looks negligible)";
        throw std::runtime_error(os.str());
    }

    CensusExperiment ex;
    ex.N = N;
    ex.seed = opt.seed;
    ex.filter = filter;
    ex.samples_requested = opt.samples;
    ex.samples_accepted = total.accepted;
    ex.disjoint_pairs.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        CensusExperiment::PerClass pc;
        pc.cls = classes[i];
        pc.histogram = std::move(total.hist[i]);
        const double n = static_cast<double>(total.accepted);
        pc.mean = static_cast<double>(total.sum[i]) / n;
        const double var = std::max(0.0, static_cast<double>(total.sum_sq[i]) / n - pc.mean * pc.mean);
        pc.std_error = std::sqrt(var / n);
        ex.classes.push_back(std::move(pc));
        for (std::size_t j = 0; j < k; ++j) ex.disjoint_pairs[i][j] = static_cast<double>(total.pair_sum[i][j]) / n;
    }
    return ex;
}

inline double poisson_pmf(const BigRat& lambda, int kk) {
    if (lambda <= 0) throw std::invalid_argument("poisson_pmf: lambda must be positive");
    if (kk < 0) return 0.0;
    const double l = to_double(lambda);
    return std::exp(-l + kk * std::log(l) - std::lgamma(kk + 1.0));
}

/// Total variation on the union of supports: (1/2) sum |p - q|.
inline double tv_distance(const std::map<int, double>& p, const std::map<int, double>& q) {
    double s = 0.0;
    auto it = p.begin();
    auto jt = q.begin();
    while (it != p.end() || jt != q.end()) {
        if (jt == q.end() || (it != p.end() && it->first < jt->first)) {
            s += std::abs(it->second);
            ++it;
        } else if (it == p.end() || jt->first < it->first) {
            s += std::abs(jt->second);
            ++jt;
        } else {
            s += std::abs(it->second - jt->second);
            ++it;
            ++jt;
        }
    }
    return s / 2.0;
}

/// TV between a finite empirical law on {0,1,...} and Poisson(lambda),
/// including the Poisson tail above the observed support.
inline double tv_to_poisson(const std::map<int, double>& hist, const BigRat& lambda) {
    const int k_max = hist.empty() ? -1 : hist.rbegin()->first;
    double s = 0.0, pois_mass = 0.0;
    for (int kk = 0; kk <= k_max; ++kk) {
        const double q = poisson_pmf(lambda, kk);
        pois_mass += q;
        const auto it = hist.find(kk);
        s += std::abs((it == hist.end() ? 0.0 : it->second) - q);
    }
    s += 1.0 - pois_mass;
    return s / 2.0;
}

/// Limiting probability that the shortest essential trace equals k: no class
/// of trace 3..k-1 appears, some class of trace k does. Exact rationals up to
/// the final exponentials.
inline double systole_trace_probability(int k) {
    if (k < 3) throw std::invalid_argument("systole_trace_probability: k must be >= 3");
    BigRat below = 0, at = 0;
    for (int i = 3; i <= k; ++i) {
        BigRat level = 0;
        for (const auto& c : classes_with_trace(i)) level += poisson_mean(c);
        if (i < k)
            below += level;
        else
            at = level;
    }
    return std::exp(-to_double(below)) * (1.0 - std::exp(-to_double(at)));
}

/// Upper bound for P(sys >= x) when one triangle crossing costs at most m2:
/// 1 - sum_{j=2}^{floor(x/m2)} of the probability that the shortest circuit
/// has exactly j edges.
inline double systole_tail_bound(double x, double m2) {
    if (m2 <= 0) throw std::invalid_argument("systole_tail_bound: m2 must be positive");
    if (x < 0) throw std::invalid_argument("systole_tail_bound: x must be non-negative");
    const double kf = std::floor(x / m2);
    const long long K = kf > 1e9 ? 1000000000LL : static_cast<long long>(kf);

    double bound = 1.0;
    double s_prev = 0.0;  // sum_{j=1}^{k-1} (2^(j-1) - 1)/j
    double term_j = 0.0;
    for (long long kk = 2; kk <= K; ++kk) {
        term_j = (std::pow(2.0, static_cast<double>(kk - 1)) - 1.0) / static_cast<double>(kk);
        const double s_cur = s_prev + term_j;
        bound -= std::exp(-s_prev) - std::exp(-s_cur);
        if (std::exp(-s_cur) == 0.0) break;  // remaining terms vanish
        s_prev = s_cur;
    }
    return bound;
}

/// Largest distance between side midpoints of a flat equilateral triangle.
inline double equilateral_midpoint_spread(double side) {
    if (side <= 0) throw std::invalid_argument("equilateral_midpoint_spread: side must be positive");
    return side / 2.0;
}

}  // namespace trisurf
