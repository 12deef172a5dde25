#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "trisurf/exact_oracle.hpp"
#include "trisurf/numeric.hpp"
#include "trisurf/spectrum.hpp"

namespace trisurf {

using Json = nlohmann::ordered_json;

inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

/// Writes UTF-8 text with a trailing newline to the path, or to fallback when
/// the path is empty.
inline void write_output(const std::string& content, const std::string& path, std::ostream& fallback) {
    std::string body = content;
    if (body.empty() || body.back() != '\n') body += '\n';
    if (path.empty()) {
        fallback << body;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << body;
    if (!f) throw std::runtime_error("write failed: " + path);
}

inline Json surface_to_json(const SurfaceSummary& s) {
    Json j;
    j["connected"] = s.connected;
    if (s.genus())
        j["genus"] = *s.genus();
    else
        j["genus"] = nullptr;
    j["left_turn_cycles"] = s.total_left_turn_cycles;
    j["components"] = Json::array();
    for (const auto& c : s.components)
        j["components"].push_back(Json{{"triangles", c.triangles}, {"left_turn_cycles", c.left_turn_cycles}, {"genus", c.genus}});
    return j;
}

inline Json census_to_json(const CensusExperiment& ex) {
    Json j;
    j["N"] = ex.N;
    j["seed"] = ex.seed;
    j["filter"] = ex.filter.description();
    j["samples_requested"] = ex.samples_requested;
    j["samples_accepted"] = ex.samples_accepted;
    j["acceptance_rate"] = ex.acceptance_rate();
    j["classes"] = Json::array();
    for (std::size_t i = 0; i < ex.classes.size(); ++i) {
        const auto& pc = ex.classes[i];
        Json c;
        c["word"] = pc.cls.representative;
        c["lambda"] = rational_string(poisson_mean(pc.cls));
        c["mean"] = pc.mean;
        c["std_error"] = pc.std_error;
        c["histogram"] = Json::object();
        for (const auto& [count, times] : pc.histogram) c["histogram"][std::to_string(count)] = times;
        j["classes"].push_back(c);
    }
    j["disjoint_pair_means"] = ex.disjoint_pairs;
    return j;
}

inline std::string census_to_csv(const CensusExperiment& ex) {
    std::ostringstream os;
    os << "word,count,frequency\n";
    os << std::setprecision(12);
    for (std::size_t i = 0; i < ex.classes.size(); ++i) {
        const auto& pc = ex.classes[i];
        for (const auto& [count, times] : pc.histogram)
            os << pc.cls.representative << "," << count << ","
               << static_cast<double>(times) / static_cast<double>(ex.samples_accepted) << "\n";
    }
    return os.str();
}

inline Json max_genus_to_json(int N, const WordMultiset& ws, const MaxGenusCount& r) {
    const auto rc = restricted_classes(N, ws);
    Json j;
    j["N"] = N;
    j["M"] = ws.total_size();
    j["ground_size"] = rc.ground_size;
    j["s_value"] = rational_string(r.char_sum);
    j["s_value_double"] = to_double(r.char_sum);
    j["exact"] = r.exact.str();
    if (std::isfinite(r.asymptotic_double()))
        j["asymptotic"] = r.asymptotic_double();
    else
        j["asymptotic"] = rational_string(r.asymptotic);
    const BigRat prob(r.exact, class_size(rc.gluing_shape));
    j["probability"] = rational_string(prob);
    j["probability_double"] = to_double(prob);
    return j;
}

}  // namespace trisurf
