// End-to-end validation suite. Each numbered check prints one PASS/FAIL line;
// the exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "test_oracles.hpp"
#include "trisurf/characters.hpp"
#include "trisurf/circuits.hpp"
#include "trisurf/exact_oracle.hpp"
#include "trisurf/spectrum.hpp"

using namespace trisurf;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failures;
    std::printf("[%s] %2d %-38s (%6.2fs) %s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), dt,
                o.detail.c_str());
    std::fflush(stdout);
}

std::string rat(const BigRat& q) { return rational_string(q); }

BigRat abs_rat(const BigRat& q) { return q < 0 ? BigRat(-q) : q; }

}  // namespace

int main() {
    const WordMultiset no_words{};
    const WordClass lr = class_of("LR");

    run(1, "exact genus law at N=1", [&] {
        const ExhaustiveReport r = exact_genus_distribution(1);
        Outcome o;
        o.ok = r.genus_histogram == std::map<int, long long>{{0, 12}, {1, 3}} && r.disconnected == 0;
        o.detail = "histogram {0:" + std::to_string(r.genus_histogram.at(0)) +
                   ", 1:" + std::to_string(r.genus_histogram.at(1)) + "}";
        return o;
    });

    run(2, "characters vs brute force, N=1", [&] {
        const MaxGenusCount m = max_genus_count(1, no_words);
        const long long b = brute_max_genus_count(1, no_words);
        Outcome o;
        o.ok = m.exact == 3 && b == 3 && m.char_sum == BigRat(6, 5);
        o.detail = "exact=" + m.exact.str() + " brute=" + std::to_string(b) + " s=" + rat(m.char_sum);
        return o;
    });

    run(3, "characters vs brute force, N=3", [&] {
        const MaxGenusCount m = max_genus_count(3, no_words);
        const long long b = brute_max_genus_count(3, no_words);
        const ExhaustiveReport r = exact_genus_distribution(3);
        Outcome o;
        o.ok = m.exact == b && r.genus_histogram.at(2) == b;
        o.detail = "exact=" + m.exact.str() + " brute=" + std::to_string(b) +
                   " genus-2 mass=" + std::to_string(r.genus_histogram.at(2));
        return o;
    });

    run(4, "character sum tends to 2", [&] {
        const BigRat d11 = abs_rat(single_cycle_char_sum(11, no_words) - 2);
        const BigRat d101 = abs_rat(single_cycle_char_sum(101, no_words) - 2);
        const BigRat d501 = abs_rat(single_cycle_char_sum(501, no_words) - 2);
        Outcome o;
        o.ok = d11 > d101 && d101 > d501 && d501 < BigRat(1, 100);
        std::ostringstream os;
        os << "|s-2| = " << to_double(d11) << " -> " << to_double(d101) << " -> " << to_double(d501);
        o.detail = os.str();
        return o;
    });

    run(5, "character engine identities", [&] {
        Outcome o;
        for (int n = 2; n <= 8 && o.ok; ++n) {
            const auto parts = partitions_of(n);
            for (const auto& alpha : parts)
                for (const auto& beta : parts) {
                    BigInt s = 0;
                    for (const auto& lam : parts) s += mn_character(lam, alpha) * mn_character(lam, beta);
                    const BigInt want = (alpha == beta) ? factorial(n) / class_size(alpha) : BigInt(0);
                    if (s != want) {
                        o.ok = false;
                        o.detail = "orthogonality failed at n=" + std::to_string(n);
                    }
                }
        }
        for (int n = 1; n <= 10 && o.ok; ++n)
            for (const auto& lam : partitions_of(n))
                if (mn_character(lam, Partition::rectangular(1, n)) != dimension(lam)) {
                    o.ok = false;
                    o.detail = "dimension mismatch at n=" + std::to_string(n);
                }
        if (o.ok) o.detail = "orthogonality n<=8, dimensions n<=10";
        return o;
    });

    run(6, "hook-shape closed forms", [&] {
        const std::vector<std::pair<int, WordMultiset>> cases = {
            {1, no_words},
            {2, no_words},
            {1, WordMultiset({{lr, 1}})},
            {2, WordMultiset({{lr, 1}})},
            {2, WordMultiset({{class_of("LLR"), 1}})},
            {3, WordMultiset({{class_of("LLR"), 1}})},
        };
        Outcome o;
        int checked = 0;
        for (const auto& [N, ws] : cases) {
            const RestrictedClasses rc = restricted_classes(N, ws);
            if (rc.ground_size > 12) continue;
            for (int p = 0; p <= rc.ground_size - 1; ++p, ++checked) {
                const Partition hook = Partition::hook(rc.ground_size - p, p);
                if (binomial(rc.ground_size - 1, p) != dimension(hook) ||
                    hook_char_gluing(p, N, ws.total_size()) != mn_character(hook, rc.gluing_shape) ||
                    hook_char_rotation(p, N, ws) != mn_character(hook, rc.rotation_shape)) {
                    o.ok = false;
                    o.detail = "mismatch at N=" + std::to_string(N) + " p=" + std::to_string(p);
                    return o;
                }
            }
        }
        o.detail = std::to_string(checked) + " hook values against the engine";
        return o;
    });

    run(7, "circuit census vs walk oracle", [&] {
        const auto classes = classes_up_to_length(6);
        Outcome o;
        long long compared = 0;
        enumerate_all_pairings(1, [&](const std::vector<std::pair<int, int>>& ps) {
            const FatGraph g = fat_graph(Pairing(6, ps));
            for (const auto& c : classes) {
                if (count_word(g, c) != oracle::count_class(g, c)) o.ok = false;
                ++compared;
            }
        });
        for (int rep = 0; rep < 200 && o.ok; ++rep) {
            const FatGraph g = fat_graph(sample_pairing_indexed(2, 20240809, rep));
            for (const auto& c : classes) {
                if (count_word(g, c) != oracle::count_class(g, c)) o.ok = false;
                ++compared;
            }
        }
        o.detail = std::to_string(compared) + " class counts, zero tolerance";
        return o;
    });

    run(8, "modular torus pin", [&] {
        const FatGraph theta = fat_graph(Pairing(6, {{1, 4}, {2, 5}, {3, 6}}));
        const double systole = hyperbolic_length(lr);
        Outcome o;
        o.ok = count_word(theta, lr) == 3 && left_turn_word_lengths(theta) == std::vector<int>{6} &&
               min_essential_trace(theta, 12) == 3 && std::abs(systole - 1.9248473002384139) <= 1e-12;
        std::ostringstream os;
        os.precision(16);
        os << "Z=3, lht={6}, trace 3, systole " << systole;
        o.detail = os.str();
        return o;
    });

    run(9, "unconditioned Poisson baseline at N=64", [&] {
        CensusOptions opt;
        opt.samples = 100000;
        opt.seed = 64001;
        opt.threads = 2;
        const CensusExperiment ex = run_census(64, {lr}, GenusFilter::all(), opt);
        const double mean = ex.classes[0].mean;
        const double se = ex.classes[0].std_error;
        const double tv = tv_to_poisson(ex.frequencies(0), BigRat(1, 2));
        Outcome o;
        o.ok = std::abs(mean - 0.5) <= 3.0 * se && tv <= 0.02;
        std::ostringstream os;
        os << "mean " << mean << " (3se " << 3 * se << "), TV " << tv;
        o.detail = os.str();
        return o;
    });

    run(10, "window conditioning trend (N=16 -> N=64)", [&] {
        auto conditioned_tv = [&](int N) {
            CensusOptions opt;
            opt.samples = 50000;
            opt.seed = 77000 + N;
            opt.threads = 2;
            const CensusExperiment ex = run_census(N, {lr}, genus_window(N, 2.0, 0.0), opt);
            return std::pair<long long, double>(ex.samples_accepted, tv_to_poisson(ex.frequencies(0), BigRat(1, 2)));
        };
        const auto [acc16, tv16] = conditioned_tv(16);
        const auto [acc64, tv64] = conditioned_tv(64);
        Outcome o;
        o.ok = acc16 >= 20000 && acc64 >= 20000 && tv64 <= 0.03 && tv64 <= tv16;
        std::ostringstream os;
        os << "TV " << tv16 << " (n=" << acc16 << ") -> " << tv64 << " (n=" << acc64 << ")";
        o.detail = os.str();
        return o;
    });

    run(11, "max-genus conditioning at N=9", [&] {
        const double p9 = to_double(max_genus_probability(9, no_words));
        CensusOptions opt;
        opt.samples = 200000;
        opt.seed = 90001;
        opt.threads = 2;
        const CensusExperiment cond = run_census(9, {lr}, GenusFilter::max_genus(), opt);
        CensusOptions all_opt = opt;
        all_opt.seed = 90002;
        const CensusExperiment uncond = run_census(9, {lr}, GenusFilter::all(), all_opt);

        const double rate = cond.acceptance_rate();
        const double rate_se = std::sqrt(p9 * (1.0 - p9) / static_cast<double>(opt.samples));
        const double diff = std::abs(cond.classes[0].mean - uncond.classes[0].mean);
        const double diff_se = std::sqrt(cond.classes[0].std_error * cond.classes[0].std_error +
                                         uncond.classes[0].std_error * uncond.classes[0].std_error);
        // what the gluing model actually gives at N=9, for the diagnostic:
        // E[Z | single cycle] = 9N(2N-1) n(N,{LR},1) / n(N,empty)
        const BigRat cond_exact =
            BigRat(BigInt(9 * 9 * 17) * max_genus_count(9, WordMultiset({{lr, 1}})).exact,
                   max_genus_count(9, no_words).exact);
        const BigRat uncond_exact(9 * 9 * 17, 53 * 51);
        Outcome o;
        o.ok = std::abs(rate - p9) <= 3.0 * rate_se && diff <= 3.0 * diff_se;
        std::ostringstream os;
        os << "rate " << rate << " vs " << p9 << ", mean gap " << diff << " (3se " << 3 * diff_se
           << "; exact means " << rat(cond_exact) << " vs " << rat(uncond_exact) << ")";
        o.detail = os.str();
        return o;
    });

    run(12, "systole trace law evaluator", [&] {
        Outcome o;
        std::ostringstream os;
        const double r3 = systole_trace_probability(3);
        const double r4 = systole_trace_probability(4);
        if (std::abs(r3 - (1.0 - std::exp(-0.5))) > 1e-12) o.ok = false;
        if (std::abs(r4 - std::exp(-0.5) * (1.0 - std::exp(-1.0))) > 1e-12) o.ok = false;
        double total = 0.0;
        for (int k = 3; k <= 12; ++k) {
            const double r = systole_trace_probability(k);
            total += r;
            if (r > std::exp(-k + 3.0)) {
                o.ok = false;
                os << " rhs(" << k << ")=" << r << ">exp(" << 3 - k << ")=" << std::exp(-k + 3.0) << ";";
            }
        }
        if (total > 1.0) o.ok = false;
        std::ostringstream head;
        head.precision(10);
        head << "rhs(3)=" << r3 << " rhs(4)=" << r4 << " sum(3..12)=" << total;
        o.detail = head.str() + os.str();
        return o;
    });

    run(13, "systole tail bound evaluator", [&] {
        Outcome o;
        o.ok = systole_tail_bound(0.9, 0.5) == 1.0 &&
               std::abs(systole_tail_bound(1.0, 0.5) - std::exp(-0.5)) <= 1e-12;
        double prev = 2.0;
        for (int i = 0; i < 100; ++i) {
            const double b = systole_tail_bound(8.0 * i / 99.0, 0.5);
            if (b > prev + 1e-15) o.ok = false;
            prev = b;
        }
        o.detail = "step values and 100-point monotonicity";
        return o;
    });

    run(14, "sign parity of the composite", [&] {
        Outcome o;
        for (int N = 1; N <= 8 && o.ok; ++N) {
            const Permutation sigma = triangle_rotation(N);
            for (int i = 0; i < 10000; ++i) {
                const Pairing p = sample_pairing_indexed(N, 140000 + N, i);
                if (compose(sigma, gluing_involution(p)).sign() != (N % 2 ? -1 : 1)) {
                    o.ok = false;
                    break;
                }
            }
        }
        o.detail = "sign = (-1)^N over 10^4 pairings for N=1..8";
        return o;
    });

    std::printf("%d of 14 criteria failed\n", failures);
    return failures;
}
