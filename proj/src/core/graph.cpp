#include "graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "error.hpp"

namespace ecocut {

weighted_graph weighted_graph::from_edge_list(int n, const std::vector<edge>& edges) {
    if (n < 1) fail(errc::invalid_argument, "node count must be >= 1");
    weighted_graph g;
    g.n_ = n;
    g.incident_.assign(static_cast<std::size_t>(n), {});
    std::map<std::pair<int, int>, int> seen;
    for (const edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            fail(errc::id_out_of_range, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                            ") out of range for n=" + std::to_string(n));
        if (e.u == e.v) fail(errc::self_loop, "self-loop at node " + std::to_string(e.u));
        if (!(e.w > 0.0)) fail(errc::non_positive_weight, "edge (" + std::to_string(e.u) + "," +
                                                              std::to_string(e.v) + ") has non-positive weight");
        auto key = std::minmax(e.u, e.v);
        int id = static_cast<int>(g.edges_.size());
        if (!seen.emplace(key, id).second)
            fail(errc::duplicate_edge, "duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        g.edges_.push_back(e);
        g.incident_[static_cast<std::size_t>(e.u)].push_back(id);
        g.incident_[static_cast<std::size_t>(e.v)].push_back(id);
    }
    return g;
}

int weighted_graph::find_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return -1;
    for (int id : incident_[static_cast<std::size_t>(u)]) {
        const edge& e = edges_[static_cast<std::size_t>(id)];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return id;
    }
    return -1;
}

double weighted_graph::degree(int node) const {
    double d = 0.0;
    for (int id : incident_[static_cast<std::size_t>(node)]) d += edges_[static_cast<std::size_t>(id)].w;
    return d;
}

double weighted_graph::total_weight() const {
    double s = 0.0;
    for (const edge& e : edges_) s += e.w;
    return s;
}

matrix weighted_graph::laplacian() const {
    std::size_t n = static_cast<std::size_t>(n_);
    matrix L(n, n);
    for (const edge& e : edges_) {
        std::size_t u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
        L(u, u) += e.w;
        L(v, v) += e.w;
        L(u, v) -= e.w;
        L(v, u) -= e.w;
    }
    return L;
}

std::vector<int> weighted_graph::component_labels(int* count) const {
    std::vector<int> label(static_cast<std::size_t>(n_), -1);
    int next = 0;
    for (int start = 0; start < n_; ++start) {
        if (label[static_cast<std::size_t>(start)] != -1) continue;
        std::queue<int> q;
        q.push(start);
        label[static_cast<std::size_t>(start)] = next;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int id : incident_[static_cast<std::size_t>(u)]) {
                const edge& e = edges_[static_cast<std::size_t>(id)];
                int other = (e.u == u) ? e.v : e.u;
                if (label[static_cast<std::size_t>(other)] == -1) {
                    label[static_cast<std::size_t>(other)] = next;
                    q.push(other);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return label;
}

bool weighted_graph::connected() const {
    int count = 0;
    component_labels(&count);
    return count == 1;
}

graph_component weighted_graph::induced(const std::vector<int>& nodes) const {
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> pos(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) pos[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
    std::vector<edge> sub;
    for (const edge& e : edges_) {
        int pu = pos[static_cast<std::size_t>(e.u)], pv = pos[static_cast<std::size_t>(e.v)];
        if (pu >= 0 && pv >= 0) sub.push_back({pu, pv, e.w});
    }
    return {from_edge_list(static_cast<int>(sorted.size()), sub), sorted};
}

weighted_graph weighted_graph::without_edge(int edge_id) const {
    if (edge_id < 0 || edge_id >= edge_count()) fail(errc::no_such_edge, "edge id out of range");
    std::vector<edge> kept;
    for (int i = 0; i < edge_count(); ++i)
        if (i != edge_id) kept.push_back(edges_[static_cast<std::size_t>(i)]);
    return from_edge_list(n_, kept);
}

weighted_graph weighted_graph::with_weight(int edge_id, double w) const {
    if (edge_id < 0 || edge_id >= edge_count()) fail(errc::no_such_edge, "edge id out of range");
    std::vector<edge> copy = edges_;
    copy[static_cast<std::size_t>(edge_id)].w = w;
    return from_edge_list(n_, copy);
}

bool weighted_graph::unit_weights() const {
    for (const edge& e : edges_)
        if (e.w != 1.0) return false;
    return true;
}

weighted_graph make_path(int n, double w) {
    if (n < 1) fail(errc::invalid_n, "path needs n >= 1");
    std::vector<edge> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1, w});
    return weighted_graph::from_edge_list(n, es);
}

weighted_graph make_cycle(int n, double w) {
    if (n < 3) fail(errc::invalid_n, "cycle needs n >= 3");
    std::vector<edge> es;
    for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n, w});
    return weighted_graph::from_edge_list(n, es);
}

weighted_graph make_complete(int n, double w) {
    if (n < 1) fail(errc::invalid_n, "complete graph needs n >= 1");
    std::vector<edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.push_back({i, j, w});
    return weighted_graph::from_edge_list(n, es);
}

weighted_graph make_star(int n, double w) {
    if (n < 3) fail(errc::invalid_n, "star needs n >= 3");
    std::vector<edge> es;
    for (int i = 1; i < n; ++i) es.push_back({0, i, w});
    return weighted_graph::from_edge_list(n, es);
}

weighted_graph make_cube(double w) {
    std::vector<edge> es;
    for (int i = 0; i < 8; ++i)
        for (int b = 0; b < 3; ++b) {
            int j = i ^ (1 << b);
            if (i < j) es.push_back({i, j, w});
        }
    return weighted_graph::from_edge_list(8, es);
}

} // namespace ecocut
