#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately avoid the library code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/cutspace.hpp"
#include "core/graph.hpp"
#include "core/rng.hpp"
#include "core/stability.hpp"

namespace testsupport {

using ecocut::cut_vector;
using ecocut::edge;
using ecocut::weighted_graph;

// The 5-node, 6-corridor worked example used throughout the suites.
inline weighted_graph g56() {
    return weighted_graph::from_edge_list(5, {{0, 1, 3}, {1, 2, 2}, {2, 3, 3}, {3, 4, 5}, {4, 0, 2}, {4, 1, 1}});
}

// A handpicked spanning tree of it: branches e2, e3, e5, e6.
inline ecocut::spanning_tree g56_tree() { return {{1, 2, 4, 5}}; }

inline cut_vector bits(const std::string& s) {
    cut_vector c(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') c.set(static_cast<int>(i));
    return c;
}

// ---- independent component counting (union-find, no library calls) --------
inline int oracle_component_count(int n, const std::vector<edge>& edges, const std::vector<int>& removed_ids) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    std::set<int> removed(removed_ids.begin(), removed_ids.end());
    for (std::size_t id = 0; id < edges.size(); ++id) {
        if (removed.count(static_cast<int>(id))) continue;
        parent[static_cast<std::size_t>(find(edges[id].u))] = find(edges[id].v);
    }
    std::set<int> roots;
    for (int v = 0; v < n; ++v) roots.insert(find(v));
    return static_cast<int>(roots.size());
}

// Sizes of components after removing `removed_ids`, ascending.
inline std::vector<int> oracle_component_sizes(int n, const std::vector<edge>& edges,
                                               const std::vector<int>& removed_ids) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    std::set<int> removed(removed_ids.begin(), removed_ids.end());
    for (std::size_t id = 0; id < edges.size(); ++id) {
        if (removed.count(static_cast<int>(id))) continue;
        parent[static_cast<std::size_t>(find(edges[id].u))] = find(edges[id].v);
    }
    std::map<int, int> size;
    for (int v = 0; v < n; ++v) size[find(v)]++;
    std::vector<int> out;
    for (auto& [root, s] : size) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- brute-force cut-set oracle: every 2^m edge subset ---------------------
// A subset is a cut-set iff its removal leaves exactly two components and
// every removed edge crosses them (minimality).
inline std::vector<cut_vector> brute_force_cutsets(const weighted_graph& g) {
    int m = g.edge_count(), n = g.node_count();
    std::vector<cut_vector> out;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> removed;
        for (int id = 0; id < m; ++id)
            if (mask & (1u << id)) removed.push_back(id);
        if (oracle_component_count(n, g.edges(), removed) != 2) continue;

        // two components: label sides by reachability from node 0
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int a) {
            while (parent[static_cast<std::size_t>(a)] != a) {
                parent[static_cast<std::size_t>(a)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
                a = parent[static_cast<std::size_t>(a)];
            }
            return a;
        };
        std::set<int> rem(removed.begin(), removed.end());
        for (int id = 0; id < m; ++id) {
            if (rem.count(id)) continue;
            parent[static_cast<std::size_t>(find(g.edge_at(id).u))] = find(g.edge_at(id).v);
        }
        bool minimal = true;
        for (int id : removed)
            if (find(g.edge_at(id).u) == find(g.edge_at(id).v)) minimal = false;
        if (!minimal) continue;

        cut_vector c(m);
        for (int id : removed) c.set(id);
        out.push_back(c);
    }
    return out;
}

// Closure of a vector set under ring sum (zero excluded).
inline std::set<cut_vector> ring_sum_closure(const std::vector<cut_vector>& vecs) {
    std::set<cut_vector> closed(vecs.begin(), vecs.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<cut_vector> current(closed.begin(), closed.end());
        for (std::size_t i = 0; i < current.size(); ++i)
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                cut_vector s = ecocut::ring_sum(current[i], current[j]);
                if (s.any() && closed.insert(s).second) grew = true;
            }
    }
    return closed;
}

// ---- random graphs for property tests --------------------------------------
// Connected graph on n nodes: random spanning tree + extra edges. Weights
// uniform in [wmin, wmax] (or exactly 1).
inline weighted_graph random_connected_graph(ecocut::splitmix64& rng, int n, double extra_edge_prob,
                                             double wmin = 1.0, double wmax = 1.0) {
    std::vector<edge> edges;
    auto weight = [&] { return wmin == wmax ? wmin : wmin + (wmax - wmin) * rng.next_double(); };
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
        edges.push_back({u, v, weight()});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool present = false;
            for (const edge& e : edges)
                if ((e.u == i && e.v == j) || (e.u == j && e.v == i)) present = true;
            if (!present && rng.next_double() < extra_edge_prob) edges.push_back({i, j, weight()});
        }
    return weighted_graph::from_edge_list(n, edges);
}

// ---- transverse linearization oracle ---------------------------------------
// Max real part of the 2n x 2n linearization restricted to the complement of
// the uniform (synchronous) mode, via a Helmert basis of 1-perp and a dense
// nonsymmetric eigensolve. Independent of the library's spectral code.
inline double transverse_max_re(const weighted_graph& g, const std::vector<ecocut::jacobian2>& jac) {
    int n = g.node_count();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const edge& e : g.edges()) {
        L(e.u, e.u) += e.w;
        L(e.v, e.v) += e.w;
        L(e.u, e.v) -= e.w;
        L(e.v, e.u) -= e.w;
    }
    // Helmert rows k = 1..n-1 span the complement of the all-ones vector
    Eigen::MatrixXd Q(n, n - 1);
    for (int k = 1; k < n; ++k) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < k; ++i) v(i) = 1.0;
        v(k) = -static_cast<double>(k);
        Q.col(k - 1) = v / std::sqrt(static_cast<double>(k) * (k + 1));
    }
    auto proj = [&](const Eigen::MatrixXd& M) -> Eigen::MatrixXd { return Q.transpose() * M * Q; };
    Eigen::MatrixXd Axx = Eigen::MatrixXd::Zero(n, n), Axy = Axx, Ayx = Axx, Ayy = Axx;
    for (int i = 0; i < n; ++i) {
        Axx(i, i) = jac[static_cast<std::size_t>(i)].a[0];
        Axy(i, i) = jac[static_cast<std::size_t>(i)].a[1];
        Ayx(i, i) = jac[static_cast<std::size_t>(i)].a[2];
        Ayy(i, i) = jac[static_cast<std::size_t>(i)].a[3];
    }
    int t = n - 1;
    Eigen::MatrixXd M(2 * t, 2 * t);
    M.topLeftCorner(t, t) = proj(Axx - L);
    M.topRightCorner(t, t) = proj(Axy);
    M.bottomLeftCorner(t, t) = proj(Ayx);
    M.bottomRightCorner(t, t) = proj(Ayy - L);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(M, false);
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        best = std::max(best, solver.eigenvalues()[i].real());
    return best;
}

// Laplacian eigenvalues via Eigen (independent of the Jacobi solver).
inline std::vector<double> eigen_laplacian_values(const weighted_graph& g) {
    int n = g.node_count();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const edge& e : g.edges()) {
        L(e.u, e.u) += e.w;
        L(e.v, e.v) += e.w;
        L(e.u, e.v) -= e.w;
        L(e.v, e.u) -= e.w;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(L);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = s.eigenvalues()(i);
    return out;
}

} // namespace testsupport
