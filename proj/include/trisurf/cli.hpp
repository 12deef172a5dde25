#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trisurf/report.hpp"

namespace trisurf {

namespace cli_detail {

inline std::vector<WordClass> parse_word_list(const std::string& csv, std::ostream& warn) {
    std::vector<WordClass> out;
    std::set<Word> seen;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        WordClass c = class_of(item);
        if (c.is_left_turn_type())
            throw std::invalid_argument("word '" + item + "' is a left-hand-turn class; counts for it live in the lht report");
        if (!seen.insert(c.representative).second) {
            warn << "warning: word '" << item << "' duplicates class [" << c.representative << "], ignored\n";
            continue;
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline GenusFilter parse_filter(const std::string& spec, int N) {
    if (spec == "all") return GenusFilter::all();
    if (spec == "maxgenus") return GenusFilter::max_genus();
    if (spec.rfind("window:", 0) == 0) {
        double c1 = 0, c2 = 0;
        char comma = 0;
        std::istringstream is(spec.substr(7));
        is >> c1;
        if (is >> comma >> c2 && comma != ',') throw std::invalid_argument("bad filter spec: " + spec);
        return genus_window(N, c1, c2);
    }
    throw std::invalid_argument("unknown filter '" + spec + "' (expected all, maxgenus or window:c1[,c2])");
}

inline std::uint64_t pick_seed(std::optional<std::uint64_t> given, std::ostream& err) {
    if (given) return *given;
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "note: no --seed given, using " << s << "\n";
    return s;
}

inline WordMultiset multiset_of(const std::vector<WordClass>& classes) {
    std::vector<std::pair<WordClass, int>> items;
    for (const auto& c : classes) items.emplace_back(c, 1);
    return WordMultiset(std::move(items));
}

}  // namespace cli_detail

/// Command-line front end. Returns the process exit code: 0 success, 1 I/O or
/// internal failure, 2 flag errors, 3 guard/precondition violations.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"random triangle gluings: surfaces, curve counts, character exact counts"};
    app.require_subcommand(1);

    // shared option storage
    int N = 0;
    long long samples = 10000;
    std::optional<std::uint64_t> seed;
    std::string words_csv, filter_spec = "all", out_path, format = "json";
    double floor = 1e-4;
    int threads = 1;

    auto* sample_cmd = app.add_subcommand("sample", "draw one gluing and summarize the surface");
    sample_cmd->add_option("-N,--triangles", N, "N; the surface glues 2N triangles");
    std::optional<std::uint64_t> sample_seed;
    sample_cmd->add_option("--seed", sample_seed, "RNG seed");
    sample_cmd->add_option("--words", words_csv, "comma-separated turn words to count, e.g. LR,LLR");
    int trace_cap = 0;
    sample_cmd->add_option("--trace-cap", trace_cap, "also report the minimal essential trace up to this cap");
    std::string dump_path, load_path;
    sample_cmd->add_option("--dump", dump_path, "write the pairing as JSON to this path");
    sample_cmd->add_option("--load", load_path, "summarize the pairing in this JSON file instead of sampling");
    sample_cmd->add_option("--out", out_path, "output path (default: stdout)");

    auto* census_cmd = app.add_subcommand("census", "empirical curve-count law under a genus filter");
    census_cmd->add_option("-N,--triangles", N, "N; the surface glues 2N triangles")->required();
    census_cmd->add_option("--samples", samples, "number of gluings to draw");
    census_cmd->add_option("--seed", seed, "RNG seed");
    census_cmd->add_option("--words", words_csv, "comma-separated turn words, e.g. LR,LLR")->required();
    census_cmd->add_option("--filter", filter_spec, "all | maxgenus | window:c1[,c2]");
    census_cmd->add_option("--floor", floor, "acceptance-rate floor before aborting");
    census_cmd->add_option("--threads", threads, "worker threads");
    census_cmd->add_option("--format", format, "json | csv");
    census_cmd->add_option("--out", out_path, "output path (default: stdout)");

    auto* exact_cmd = app.add_subcommand("exact", "exhaustive law over all pairings (N <= 3)");
    exact_cmd->add_option("-N,--triangles", N, "N; the surface glues 2N triangles")->required();
    exact_cmd->add_option("--words", words_csv, "also tabulate joint counts of these words");
    exact_cmd->add_option("--out", out_path, "output path (default: stdout)");

    auto* maxgenus_cmd = app.add_subcommand("maxgenus", "exact count of single-cycle gluings via characters");
    maxgenus_cmd->add_option("-N,--triangles", N, "N; the surface glues 2N triangles")->required();
    maxgenus_cmd->add_option("--words", words_csv, "fixed word multiset (multiplicity 1 each)");
    maxgenus_cmd->add_option("--out", out_path, "output path (default: stdout)");

    auto* sysdist_cmd = app.add_subcommand("sysdist", "limiting systole law over trace values");
    int kmax = 8;
    sysdist_cmd->add_option("--kmax", kmax, "largest trace to tabulate");
    sysdist_cmd->add_option("--format", format, "json | csv");
    sysdist_cmd->add_option("--out", out_path, "output path (default: stdout)");

    auto* bounds_cmd = app.add_subcommand("bounds", "tail bound for the systole under a triangle metric");
    double x = 0.0, m2 = 0.0, side = 1.0, m1 = 0.0;
    bounds_cmd->add_option("--x", x, "length threshold")->required();
    bounds_cmd->add_option("--m2", m2, "max distance between side midpoints (default: equilateral, side 1)");
    bounds_cmd->add_option("--side", side, "equilateral side length used when --m2 is not given");
    bounds_cmd->add_option("--m1", m1, "shortest two-triangle crossing of the metric; echoed as a systole lower bound");
    int grid = 0;
    bounds_cmd->add_option("--grid", grid, "evaluate on this many points in [0, x] instead of just x");
    bounds_cmd->add_option("--format", format, "json | csv");
    bounds_cmd->add_option("--out", out_path, "output path (default: stdout)");

    std::vector<const char*> argv;
    argv.push_back("trisurf");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (format != "json" && format != "csv") throw std::invalid_argument("unknown --format '" + format + "'");

        if (sample_cmd->parsed()) {
            Json config{{"command", "sample"}};
            Pairing p = [&] {
                if (!load_path.empty()) {
                    std::ifstream f(load_path);
                    if (!f) throw std::runtime_error("cannot open " + load_path);
                    nlohmann::json j;
                    f >> j;
                    config["load"] = load_path;
                    return Pairing::from_json(j);
                }
                if (N < 1) throw std::invalid_argument("sample: give -N or --load");
                const std::uint64_t s = cli_detail::pick_seed(sample_seed, err);
                config["N"] = N;
                config["seed"] = s;
                return sample_pairing(N, s);
            }();
            if (!dump_path.empty()) write_output(render_json(Json(p.to_json())), dump_path, out);

            Json j{{"config", config}};
            j["surface"] = surface_to_json(surface_summary(p));
            const auto classes = cli_detail::parse_word_list(words_csv, err);
            if (!classes.empty() || trace_cap > 0) {
                const CensusResult census = circuit_census(
                    fat_graph(p), classes, trace_cap > 0 ? std::optional<int>(trace_cap) : std::nullopt);
                j["census"] = census.to_json();
            } else {
                j["lht"] = left_turn_word_lengths(fat_graph(p));
            }
            write_output(render_json(j), out_path, out);
        }

        if (census_cmd->parsed()) {
            const std::uint64_t s = cli_detail::pick_seed(seed, err);
            const auto classes = cli_detail::parse_word_list(words_csv, err);
            const GenusFilter filter = cli_detail::parse_filter(filter_spec, N);
            CensusOptions opt;
            opt.samples = samples;
            opt.seed = s;
            opt.acceptance_floor = floor;
            opt.threads = threads;
            const CensusExperiment ex = run_census(N, classes, filter, opt);
            Json j{{"config", Json{{"command", "census"},
                                   {"N", N},
                                   {"seed", s},
                                   {"samples", samples},
                                   {"words", words_csv},
                                   {"filter", filter_spec},
                                   {"floor", floor},
                                   {"threads", threads}}}};
            const Json body = census_to_json(ex);
            for (const auto& [k, v] : body.items()) j[k] = v;
            write_output(format == "json" ? render_json(j) : census_to_csv(ex), out_path, out);
        }

        if (exact_cmd->parsed()) {
            const auto classes = cli_detail::parse_word_list(words_csv, err);
            ExhaustiveReport rep = classes.empty() ? exact_genus_distribution(N) : exact_joint_census(N, classes);
            Json j{{"config", Json{{"command", "exact"}, {"N", N}, {"words", words_csv}}}};
            const Json body = rep.to_json();
            for (const auto& [k, v] : body.items()) j[k] = v;
            write_output(render_json(j), out_path, out);
        }

        if (maxgenus_cmd->parsed()) {
            const WordMultiset ws = cli_detail::multiset_of(cli_detail::parse_word_list(words_csv, err));
            const MaxGenusCount r = max_genus_count(N, ws);
            Json j{{"config", Json{{"command", "maxgenus"}, {"N", N}, {"words", words_csv}}}};
            const Json body = max_genus_to_json(N, ws, r);
            for (const auto& [k, v] : body.items()) j[k] = v;
            write_output(render_json(j), out_path, out);
        }

        if (sysdist_cmd->parsed()) {
            if (kmax < 3) throw std::invalid_argument("sysdist: --kmax must be >= 3");
            Json j{{"config", Json{{"command", "sysdist"}, {"kmax", kmax}}}};
            j["rows"] = Json::array();
            std::ostringstream csv;
            csv << "k,systole,probability\n" << std::setprecision(12);
            for (int k = 3; k <= kmax; ++k) {
                const double len = 2.0 * std::acosh(k / 2.0);
                const double prob = systole_trace_probability(k);
                j["rows"].push_back(Json{{"k", k}, {"systole", len}, {"probability", prob}});
                csv << k << "," << len << "," << prob << "\n";
            }
            write_output(format == "json" ? render_json(j) : csv.str(), out_path, out);
        }

        if (bounds_cmd->parsed()) {
            const double m2v = bounds_cmd->count("--m2") ? m2 : equilateral_midpoint_spread(side);
            Json j{{"config", Json{{"command", "bounds"}, {"x", x}, {"m2", m2v}}}};
            if (bounds_cmd->count("--m1")) {
                if (m1 <= 0) throw std::invalid_argument("bounds: --m1 must be positive");
                // no closed curve crosses fewer than two triangles
                j["systole_at_least"] = m1;
            }
            std::ostringstream csv;
            csv << "x,bound\n" << std::setprecision(12);
            if (grid > 1) {
                j["rows"] = Json::array();
                for (int i = 0; i < grid; ++i) {
                    const double xi = x * i / (grid - 1);
                    const double b = systole_tail_bound(xi, m2v);
                    j["rows"].push_back(Json{{"x", xi}, {"bound", b}});
                    csv << xi << "," << b << "\n";
                }
            } else {
                const double b = systole_tail_bound(x, m2v);
                j["bound"] = b;
                csv << x << "," << b << "\n";
            }
            write_output(format == "json" ? render_json(j) : csv.str(), out_path, out);
        }

        return 0;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace trisurf
