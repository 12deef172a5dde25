#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "trisurf/pairing.hpp"
#include "trisurf/permutation.hpp"

namespace trisurf {

/// Cubic graph with a cyclic order on the half-edges at each vertex. Vertices
/// are the 3-cycles of the rotation permutation, the edge map is the gluing
/// involution. Immutable.
class FatGraph {
public:
    FatGraph(Permutation rotation, Permutation edge_map)
        : rotation_(std::move(rotation)), edge_map_(std::move(edge_map)) {
        if (rotation_.n() != edge_map_.n()) throw std::invalid_argument("FatGraph: permutations act on different ground sets");
        for (const auto& c : rotation_.cycles())
            if (c.size() != 3) throw std::invalid_argument("FatGraph: rotation must consist of 3-cycles");
        if (!edge_map_.is_fixed_point_free_involution())
            throw std::invalid_argument("FatGraph: edge map must be a fixed-point-free involution");

        vertex_of_.assign(rotation_.n() + 1, -1);
        for (int v = 0; v < static_cast<int>(rotation_.cycles().size()); ++v) {
            const auto& c = rotation_.cycles()[v];
            vertices_.push_back({c[0], c[1], c[2]});
            for (int h : c) vertex_of_[h] = v;
        }

        edge_of_.assign(rotation_.n() + 1, -1);
        for (int h = 1; h <= rotation_.n(); ++h) {
            if (h < edge_map_(h)) {
                edges_.push_back({h, edge_map_(h)});
                edge_of_[h] = edge_of_[edge_map_(h)] = static_cast<int>(edges_.size()) - 1;
            }
        }
    }

    int n_half_edges() const { return rotation_.n(); }
    int n_vertices() const { return static_cast<int>(vertices_.size()); }
    int n_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::array<int, 3>>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }

    const Permutation& rotation() const { return rotation_; }
    const Permutation& edge_map() const { return edge_map_; }

    int vertex_of(int half_edge) const { return vertex_of_[half_edge]; }
    int edge_of(int half_edge) const { return edge_of_[half_edge]; }
    int partner(int half_edge) const { return edge_map_(half_edge); }
    int next(int half_edge) const { return rotation_(half_edge); }
    int next2(int half_edge) const { return rotation_(rotation_(half_edge)); }

    /// Vertex components of the underlying graph, as a vertex -> component map.
    std::vector<int> vertex_components() const {
        std::vector<int> comp(n_vertices(), -1);
        int c = 0;
        for (int s = 0; s < n_vertices(); ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = c;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int h : vertices_[v]) {
                    int w = vertex_of_[partner(h)];
                    if (comp[w] < 0) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
                }
            }
            ++c;
        }
        return comp;
    }

private:
    Permutation rotation_;
    Permutation edge_map_;
    std::vector<std::array<int, 3>> vertices_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<int> vertex_of_;
    std::vector<int> edge_of_;
};

inline FatGraph fat_graph(const Pairing& p) {
    return FatGraph(triangle_rotation(p.triangle_pair_count()), gluing_involution(p));
}

/// Cycles of the composite "glue, then turn left", i.e. of rotation * edge_map
/// with the right factor applied first. These are the left-hand-turn cycles.
inline std::vector<std::vector<int>> left_turn_cycles(const Permutation& rotation, const Permutation& edge_map) {
    return compose(rotation, edge_map).cycles();
}

struct SurfaceSummary {
    struct Component {
        int triangles = 0;
        int left_turn_cycles = 0;
        int genus = 0;
    };
    std::vector<Component> components;
    int total_left_turn_cycles = 0;
    bool connected = false;

    /// Genus of the glued surface; disconnected surfaces have no single genus.
    std::optional<int> genus() const {
        if (!connected) return std::nullopt;
        return components.front().genus;
    }
};

/// Component-wise topology of the glued surface. A component of t triangles
/// and l left-hand-turn cycles closes up to genus 1 + t/4 - l/2.
inline SurfaceSummary surface_summary(const Pairing& p) {
    const FatGraph g = fat_graph(p);
    const auto comp = g.vertex_components();
    const int n_comp = *std::max_element(comp.begin(), comp.end()) + 1;

    SurfaceSummary s;
    s.components.resize(n_comp);
    s.connected = (n_comp == 1);
    for (int v = 0; v < g.n_vertices(); ++v) s.components[comp[v]].triangles++;

    const auto lht = left_turn_cycles(g.rotation(), g.edge_map());
    s.total_left_turn_cycles = static_cast<int>(lht.size());
    for (const auto& cyc : lht) s.components[comp[g.vertex_of(cyc.front())]].left_turn_cycles++;

    for (auto& c : s.components) {
        // Euler relation: t - 3t/2 + l = 2 - 2g.
        const int twice_genus = 2 - c.triangles + 3 * c.triangles / 2 - c.left_turn_cycles;
        if (twice_genus < 0 || twice_genus % 2 != 0) throw std::logic_error("surface_summary: non-integer or negative genus");
        c.genus = twice_genus / 2;
    }
    return s;
}

}  // namespace trisurf
