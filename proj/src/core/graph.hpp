#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace ecocut {

struct edge {
    int u = 0;
    int v = 0;
    double w = 0.0;
};

// Undirected weighted graph of habitat patches. Immutable after construction;
// edge ids are positions in the input list and define the cut-vector bit layout.
class weighted_graph {
public:
    weighted_graph() = default; // empty placeholder; build real graphs via from_edge_list
    static weighted_graph from_edge_list(int n, const std::vector<edge>& edges);

    int node_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<edge>& edges() const noexcept { return edges_; }
    const edge& edge_at(int id) const { return edges_[static_cast<std::size_t>(id)]; }

    // Edge id for the unordered pair (u, v), or -1.
    int find_edge(int u, int v) const;

    // Incident edge ids, ascending.
    const std::vector<int>& incident(int node) const { return incident_[static_cast<std::size_t>(node)]; }

    // Weighted degree d_i = sum of incident weights.
    double degree(int node) const;
    double total_weight() const;

    matrix laplacian() const;

    bool connected() const;
    // Component index per node, components numbered by smallest member id.
    std::vector<int> component_labels(int* count = nullptr) const;

    // Subgraph induced by `nodes` (original ids, any order); edge order follows
    // the parent graph's edge order.
    struct graph_component induced(const std::vector<int>& nodes) const;

    // Copy with one edge removed (edge ids are renumbered by position).
    weighted_graph without_edge(int edge_id) const;
    weighted_graph with_weight(int edge_id, double w) const;

    bool unit_weights() const;

private:
    int n_ = 0;
    std::vector<edge> edges_;
    std::vector<std::vector<int>> incident_;
};

// A subgraph with its mapping back to original node ids (position -> id).
struct graph_component {
    weighted_graph graph;
    std::vector<int> original_nodes;
};

// Generators for the special families with known lambda2.
weighted_graph make_path(int n, double w = 1.0);
weighted_graph make_cycle(int n, double w = 1.0);
weighted_graph make_complete(int n, double w = 1.0);
weighted_graph make_star(int n, double w = 1.0); // node 0 is the hub
weighted_graph make_cube(double w = 1.0);        // 3-cube, n = 8

} // namespace ecocut
