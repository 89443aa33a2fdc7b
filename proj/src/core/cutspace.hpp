#pragma once

#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace ecocut {

// GF(2) indicator vector over edge ids; bit k refers to the k-th edge in input order.
class cut_vector {
public:
    cut_vector() = default;
    explicit cut_vector(int length) : bits_(static_cast<std::size_t>(length), 0) {}
    static cut_vector from_bits(const std::vector<std::uint8_t>& bits);

    int length() const noexcept { return static_cast<int>(bits_.size()); }
    bool test(int k) const { return bits_[static_cast<std::size_t>(k)] != 0; }
    void set(int k, bool value = true) { bits_[static_cast<std::size_t>(k)] = value ? 1 : 0; }
    int popcount() const;
    bool any() const;
    std::vector<int> edge_ids() const;
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::string to_string() const; // e.g. "010100"

    bool operator==(const cut_vector& o) const { return bits_ == o.bits_; }
    bool operator<(const cut_vector& o) const { return bits_ < o.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

// Componentwise XOR (ring sum of edge sets).
cut_vector ring_sum(const cut_vector& a, const cut_vector& b);

struct spanning_tree {
    std::vector<int> edge_ids; // ascending, n-1 entries
};

// Deterministic BFS tree from node 0, neighbors visited in ascending node id.
spanning_tree bfs_spanning_tree(const weighted_graph& g);

bool is_spanning_tree(const weighted_graph& g, const spanning_tree& t);

// Fundamental cut-sets w.r.t. t; entry k pairs with tree branch k (ascending
// edge-id order): branch k plus every chord crossing the bipartition created by
// deleting branch k from t.
std::vector<cut_vector> fundamental_cutsets(const weighted_graph& g, const spanning_tree& t);

// All 2^(n-1) - 1 nonzero vectors of the cut space, as XOR combinations of the
// fundamental basis, ordered by combination bitmask ascending.
std::vector<cut_vector> enumerate_cutsets(const weighted_graph& g, int max_rank = 30);

// Remove the edges of c; components ordered by smallest contained original id.
std::vector<graph_component> apply_cutset(const weighted_graph& g, const cut_vector& c);

// Bit-scan over the cut edges: an endpoint is isolated when all its
// incident edges lie in c.
bool has_isolated_node(const weighted_graph& g, const cut_vector& c);

double cut_weight(const weighted_graph& g, const cut_vector& c);

// True iff removing c yields exactly two components and every edge of c crosses
// them (i.e. c is a single cut-set, not a union).
bool is_single_cutset(const weighted_graph& g, const cut_vector& c);

// Crossing edges of a two-sided node assignment (side[v] in {0,1}).
cut_vector crossing_edges(const weighted_graph& g, const std::vector<std::uint8_t>& side);

} // namespace ecocut
