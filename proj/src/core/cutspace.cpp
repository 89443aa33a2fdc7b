#include "cutspace.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "error.hpp"

namespace ecocut {

cut_vector cut_vector::from_bits(const std::vector<std::uint8_t>& bits) {
    cut_vector c(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) c.bits_[i] = bits[i] ? 1 : 0;
    return c;
}

int cut_vector::popcount() const {
    int n = 0;
    for (auto b : bits_) n += b;
    return n;
}

bool cut_vector::any() const {
    for (auto b : bits_)
        if (b) return true;
    return false;
}

std::vector<int> cut_vector::edge_ids() const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) ids.push_back(static_cast<int>(i));
    return ids;
}

std::string cut_vector::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

cut_vector ring_sum(const cut_vector& a, const cut_vector& b) {
    if (a.length() != b.length()) fail(errc::length_mismatch, "ring_sum on vectors of different length");
    cut_vector c(a.length());
    for (int i = 0; i < a.length(); ++i) c.set(i, a.test(i) != b.test(i));
    return c;
}

spanning_tree bfs_spanning_tree(const weighted_graph& g) {
    int n = g.node_count();
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<int> tree;
    std::queue<int> q;
    visited[0] = 1;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        // collect unvisited neighbors with the connecting edge, ascending node id
        std::vector<std::pair<int, int>> next; // (neighbor, edge id)
        for (int id : g.incident(u)) {
            const edge& e = g.edge_at(id);
            int other = (e.u == u) ? e.v : e.u;
            if (!visited[static_cast<std::size_t>(other)]) next.emplace_back(other, id);
        }
        std::sort(next.begin(), next.end());
        for (auto [v, id] : next) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            visited[static_cast<std::size_t>(v)] = 1;
            tree.push_back(id);
            q.push(v);
        }
    }
    for (char v : visited)
        if (!v) fail(errc::graph_disconnected, "spanning tree requires a connected graph");
    std::sort(tree.begin(), tree.end());
    return {tree};
}

bool is_spanning_tree(const weighted_graph& g, const spanning_tree& t) {
    int n = g.node_count();
    if (static_cast<int>(t.edge_ids.size()) != n - 1) return false;
    std::set<int> ids(t.edge_ids.begin(), t.edge_ids.end());
    if (static_cast<int>(ids.size()) != n - 1) return false;
    for (int id : ids)
        if (id < 0 || id >= g.edge_count()) return false;
    // n-1 edges spanning all n nodes and connected => tree
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int id : ids) {
        const edge& e = g.edge_at(id);
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::queue<int> q;
    q.push(0);
    visited[0] = 1;
    int seen = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[static_cast<std::size_t>(u)])
            if (!visited[static_cast<std::size_t>(v)]) {
                visited[static_cast<std::size_t>(v)] = 1;
                ++seen;
                q.push(v);
            }
    }
    return seen == n;
}

std::vector<cut_vector> fundamental_cutsets(const weighted_graph& g, const spanning_tree& t) {
    if (!is_spanning_tree(g, t)) fail(errc::not_a_spanning_tree, "edge set is not a spanning tree of the graph");
    int n = g.node_count(), m = g.edge_count();
    std::vector<cut_vector> basis;
    basis.reserve(static_cast<std::size_t>(n - 1));
    std::set<int> tree_ids(t.edge_ids.begin(), t.edge_ids.end());
    for (int branch : t.edge_ids) {
        // bipartition from deleting this branch from the tree
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        for (int id : t.edge_ids) {
            if (id == branch) continue;
            const edge& e = g.edge_at(id);
            adj[static_cast<std::size_t>(e.u)].push_back(e.v);
            adj[static_cast<std::size_t>(e.v)].push_back(e.u);
        }
        std::vector<char> side(static_cast<std::size_t>(n), 0);
        std::queue<int> q;
        int root = g.edge_at(branch).u;
        side[static_cast<std::size_t>(root)] = 1;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (!side[static_cast<std::size_t>(v)]) {
                    side[static_cast<std::size_t>(v)] = 1;
                    q.push(v);
                }
        }
        cut_vector c(m);
        for (int id = 0; id < m; ++id) {
            const edge& e = g.edge_at(id);
            if (side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)]) c.set(id);
        }
        basis.push_back(c);
    }
    return basis;
}

std::vector<cut_vector> enumerate_cutsets(const weighted_graph& g, int max_rank) {
    spanning_tree t = bfs_spanning_tree(g); // errors if disconnected
    int r = g.node_count() - 1;
    if (r > max_rank)
        fail(errc::rank_too_large,
             "graph rank " + std::to_string(r) + " exceeds the enumeration cap " + std::to_string(max_rank));
    std::vector<cut_vector> basis = fundamental_cutsets(g, t);
    std::size_t total = (std::size_t{1} << r);
    std::vector<cut_vector> out;
    out.reserve(total); // slot 0 holds the zero vector and is skipped in the result
    out.push_back(cut_vector(g.edge_count()));
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::size_t low = mask & (~mask + 1);
        int bit = 0;
        while ((std::size_t{1} << bit) != low) ++bit;
        out.push_back(ring_sum(out[mask ^ low], basis[static_cast<std::size_t>(bit)]));
    }
    out.erase(out.begin());
    return out;
}

std::vector<graph_component> apply_cutset(const weighted_graph& g, const cut_vector& c) {
    if (c.length() != g.edge_count()) fail(errc::length_mismatch, "cut vector length != edge count");
    std::vector<edge> kept;
    for (int id = 0; id < g.edge_count(); ++id)
        if (!c.test(id)) kept.push_back(g.edge_at(id));
    weighted_graph reduced = weighted_graph::from_edge_list(g.node_count(), kept);
    int count = 0;
    std::vector<int> label = reduced.component_labels(&count); // numbered by smallest member
    std::vector<std::vector<int>> nodes(static_cast<std::size_t>(count));
    for (int v = 0; v < g.node_count(); ++v)
        nodes[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])].push_back(v);
    std::vector<int> local(static_cast<std::size_t>(g.node_count()), -1);
    for (const auto& group : nodes)
        for (std::size_t i = 0; i < group.size(); ++i) local[static_cast<std::size_t>(group[i])] = static_cast<int>(i);
    std::vector<std::vector<edge>> sub_edges(static_cast<std::size_t>(count));
    for (const edge& e : kept) {
        std::size_t comp = static_cast<std::size_t>(label[static_cast<std::size_t>(e.u)]);
        sub_edges[comp].push_back({local[static_cast<std::size_t>(e.u)], local[static_cast<std::size_t>(e.v)], e.w});
    }
    std::vector<graph_component> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::size_t k = 0; k < nodes.size(); ++k)
        out.push_back({weighted_graph::from_edge_list(static_cast<int>(nodes[k].size()), sub_edges[k]), nodes[k]});
    return out;
}

bool has_isolated_node(const weighted_graph& g, const cut_vector& c) {
    if (c.length() != g.edge_count()) fail(errc::length_mismatch, "cut vector length != edge count");
    for (int id = 0; id < g.edge_count(); ++id) {
        if (!c.test(id)) continue;
        const edge& e = g.edge_at(id);
        for (int node : {e.u, e.v}) {
            bool all_cut = true;
            for (int inc : g.incident(node))
                if (!c.test(inc)) {
                    all_cut = false;
                    break;
                }
            if (all_cut) return true;
        }
    }
    return false;
}

double cut_weight(const weighted_graph& g, const cut_vector& c) {
    if (c.length() != g.edge_count()) fail(errc::length_mismatch, "cut vector length != edge count");
    double s = 0.0;
    for (int id = 0; id < g.edge_count(); ++id)
        if (c.test(id)) s += g.edge_at(id).w;
    return s;
}

bool is_single_cutset(const weighted_graph& g, const cut_vector& c) {
    if (!c.any()) return false;
    auto comps = apply_cutset(g, c);
    if (comps.size() != 2) return false;
    std::vector<int> side(static_cast<std::size_t>(g.node_count()), 0);
    for (int v : comps[1].original_nodes) side[static_cast<std::size_t>(v)] = 1;
    for (int id : c.edge_ids()) {
        const edge& e = g.edge_at(id);
        if (side[static_cast<std::size_t>(e.u)] == side[static_cast<std::size_t>(e.v)]) return false;
    }
    return true;
}

cut_vector crossing_edges(const weighted_graph& g, const std::vector<std::uint8_t>& side) {
    if (static_cast<int>(side.size()) != g.node_count())
        fail(errc::dimension_mismatch, "side assignment size != node count");
    cut_vector c(g.edge_count());
    for (int id = 0; id < g.edge_count(); ++id) {
        const edge& e = g.edge_at(id);
        if (side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)]) c.set(id);
    }
    return c;
}

} // namespace ecocut
