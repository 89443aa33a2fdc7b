#include "stability.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "error.hpp"

namespace ecocut {

namespace {

constexpr double kStructTol = 1e-9;   // eigenvector-form screens, component-equality tests
constexpr double kMarginTol = 1e-9;   // lambda2 == tau boundary
constexpr double kResidualTol = 1e-7; // eigenpair validation

double rel_scale(const matrix& m) { return std::max(1.0, m.norm_inf()); }

double vec_inf(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

void validate_eigpair(const matrix& L, const eigpair& p) {
    if (static_cast<std::size_t>(L.rows()) != p.vector.size())
        fail(errc::dimension_mismatch, "eigenvector length != matrix dimension");
    double xn = vec_inf(p.vector);
    if (xn == 0.0) fail(errc::not_an_eigenpair, "zero vector is not an eigenvector");
    std::vector<double> r = L.mul(p.vector);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.value * p.vector[i];
    if (vec_inf(r) > kResidualTol * rel_scale(L) * xn)
        fail(errc::not_an_eigenpair, "residual too large for the claimed eigenpair");
}

} // namespace

local_dynamics local_dynamics::from_jacobians(std::vector<jacobian2> per_patch) {
    if (per_patch.empty()) fail(errc::empty, "no patch dynamics given");
    for (const jacobian2& j : per_patch)
        for (double v : j.a)
            if (!std::isfinite(v)) fail(errc::invalid_argument, "non-finite Jacobian entry");
    local_dynamics d;
    d.n_ = static_cast<int>(per_patch.size());
    d.jac_ = std::move(per_patch);
    return d;
}

local_dynamics local_dynamics::uniform(const jacobian2& j, int n) {
    return from_jacobians(std::vector<jacobian2>(static_cast<std::size_t>(n), j));
}

local_dynamics local_dynamics::threshold_only(double tau, int n) {
    if (!std::isfinite(tau)) fail(errc::invalid_argument, "tau must be finite");
    local_dynamics d;
    d.n_ = n;
    d.tau_override_ = tau;
    return d;
}

local_dynamics local_dynamics::restricted(const std::vector<int>& nodes) const {
    local_dynamics d;
    d.n_ = static_cast<int>(nodes.size());
    d.tau_override_ = tau_override_;
    if (!jac_.empty()) {
        d.jac_.reserve(nodes.size());
        for (int v : nodes) {
            if (v < 0 || v >= n_) fail(errc::id_out_of_range, "patch id out of range");
            d.jac_.push_back(jac_[static_cast<std::size_t>(v)]);
        }
    }
    return d;
}

stability_threshold tau(const local_dynamics& dyn) {
    if (dyn.tau_override()) return {*dyn.tau_override(), -1};
    if (!dyn.has_jacobians()) fail(errc::empty, "no patch dynamics to derive tau from");
    stability_threshold t{0.0, 0};
    double best = dyn.at(0).trace();
    for (int i = 1; i < dyn.size(); ++i) {
        double tr = dyn.at(i).trace();
        if (tr > best) {
            best = tr;
            t.argmax_patch = i;
        }
    }
    t.tau = 0.5 * best;
    return t;
}

patch_instability patch_instability_check(const jacobian2& j) {
    for (double v : j.a)
        if (!std::isfinite(v)) fail(errc::invalid_argument, "non-finite Jacobian entry");
    patch_instability out;
    double tr = j.trace(), det = j.det();
    if (tr > 0.0) {
        out.verdict = patch_verdict::unstable_type1;
        out.diffusion_stabilizable = j.discriminant() <= 0.0;
    } else if (tr < 0.0 && det < 0.0) {
        out.verdict = patch_verdict::unstable_type2;
    } else {
        out.verdict = patch_verdict::not_unstable;
    }
    return out;
}

namespace {

stability_verdict verdict_for_connected(const weighted_graph& g, const local_dynamics& dyn) {
    stability_verdict v;
    v.tau = tau(dyn).tau;
    v.lambda2 = component_lambda2(g);
    v.condition1_ok = true;
    if (dyn.has_jacobians()) {
        for (int i = 0; i < dyn.size(); ++i)
            if (dyn.at(i).discriminant() > 0.0) {
                v.condition1_ok = false;
                v.failing_patches.push_back(i);
            }
    }
    v.condition2_ok = v.lambda2 >= v.tau;
    v.marginal = v.condition2_ok && std::abs(v.lambda2 - v.tau) <= kMarginTol * std::max(1.0, std::abs(v.tau));
    v.stable = v.condition1_ok && v.condition2_ok;
    return v;
}

} // namespace

stability_verdict network_stability_check(const weighted_graph& g, const local_dynamics& dyn) {
    if (dyn.size() != g.node_count()) fail(errc::dimension_mismatch, "patch count != node count");
    if (g.connected()) return verdict_for_connected(g, dyn);

    // disconnected input: judge each component with its own patches, report the
    // whole-graph lambda2 (= 0) alongside the merged outcome
    int count = 0;
    std::vector<int> label = g.component_labels(&count);
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(count));
    for (int v = 0; v < g.node_count(); ++v)
        groups[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])].push_back(v);

    stability_verdict merged;
    merged.lambda2 = 0.0;
    merged.tau = tau(dyn).tau;
    merged.condition1_ok = true;
    merged.condition2_ok = true;
    for (const auto& nodes : groups) {
        auto sub = g.induced(nodes);
        local_dynamics part = dyn.restricted(nodes);
        stability_verdict v = verdict_for_connected(sub.graph, part);
        merged.condition1_ok = merged.condition1_ok && v.condition1_ok;
        merged.condition2_ok = merged.condition2_ok && v.condition2_ok;
        merged.marginal = merged.marginal || v.marginal;
        for (int p : v.failing_patches) merged.failing_patches.push_back(nodes[static_cast<std::size_t>(p)]);
    }
    std::sort(merged.failing_patches.begin(), merged.failing_patches.end());
    merged.stable = merged.condition1_ok && merged.condition2_ok;
    return merged;
}

std::vector<stability_verdict> component_stability(const std::vector<graph_component>& components,
                                                   const local_dynamics& dyn, double fallback_tau) {
    std::vector<stability_verdict> out;
    out.reserve(components.size());
    for (const graph_component& c : components) {
        if (c.graph.node_count() < 2)
            fail(errc::singleton_component, "components must have >= 2 nodes (isolating cuts are rejected upstream)");
        local_dynamics part = dyn.has_jacobians() || dyn.tau_override()
                                  ? dyn.restricted(c.original_nodes)
                                  : local_dynamics::threshold_only(fallback_tau, c.graph.node_count());
        out.push_back(verdict_for_connected(c.graph, part));
    }
    return out;
}

bound_outcome bound_verdict(const weighted_graph& component, double tau_value) {
    if (!component.connected()) fail(errc::graph_disconnected, "bound_verdict needs a connected component");
    lambda2_bound_set b = lambda2_bounds(component);
    if (tau_value > b.min_applicable_upper()) return bound_outcome::unstable;
    if (b.unweighted_exact && tau_value < b.max_applicable_lower()) return bound_outcome::stable;
    return bound_outcome::indeterminate;
}

bool necessary_avg_weight(const weighted_graph& g, double tau_value) {
    int n = g.node_count();
    if (n < 3) fail(errc::too_small, "needs n >= 3");
    double avg_degree = 2.0 * g.total_weight() / n;
    return avg_degree >= (static_cast<double>(n - 1) / n) * tau_value;
}

namespace {

// eps_i - eps_j eigenvector screen: equal diagonals, then equal coupling of
// every other node to i and j. Returns the eigenvalue d_i + w_ij, or nullopt.
std::optional<double> difference_eigenvalue(const weighted_graph& g, int i, int j) {
    double w = g.edge_at(g.find_edge(i, j)).w;
    double di = g.degree(i), dj = g.degree(j);
    double scale = std::max({1.0, di, dj});
    if (std::abs(di - dj) > kStructTol * scale) return std::nullopt;
    for (int k = 0; k < g.node_count(); ++k) {
        if (k == i || k == j) continue;
        int ki = g.find_edge(k, i), kj = g.find_edge(k, j);
        double wki = ki >= 0 ? g.edge_at(ki).w : 0.0;
        double wkj = kj >= 0 ? g.edge_at(kj).w : 0.0;
        if (std::abs(wki - wkj) > kStructTol * scale) return std::nullopt;
    }
    return di + w;
}

} // namespace

single_removal_result safe_single_edge_removal(const weighted_graph& g, int i, int j, double tau_value) {
    if (g.node_count() < 3) fail(errc::too_small, "needs n >= 3");
    int id = g.find_edge(i, j);
    if (id < 0) fail(errc::no_such_edge, "no edge between the given nodes");
    single_removal_result r;
    auto lambda = difference_eigenvalue(g, i, j);
    if (!lambda) return r;
    double w = g.edge_at(id).w;
    if (*lambda <= kStructTol || std::abs(w - *lambda) <= kStructTol) return r;
    r.lambda = *lambda;
    r.limit = 0.5 * (*lambda - tau_value);
    r.outcome = w <= r.limit ? removal_outcome::safe : removal_outcome::unsafe;
    return r;
}

rank_r_removal_result safe_rank_r_removal(const weighted_graph& g,
                                          const std::vector<std::pair<int, int>>& node_pairs,
                                          double tau_value) {
    rank_r_removal_result r;
    if (node_pairs.empty()) {
        double l2 = component_lambda2(g);
        r.min_upsilon = l2;
        r.nonadjacent_case = true;
        r.outcome = l2 >= tau_value ? removal_outcome::safe : removal_outcome::unsafe;
        return r;
    }
    std::set<std::pair<int, int>> seen;
    std::vector<int> edge_ids;
    for (auto [i, j] : node_pairs) {
        int id = g.find_edge(i, j);
        if (id < 0) fail(errc::no_such_edge, "no edge between the given nodes");
        auto key = std::minmax(i, j);
        if (!seen.insert(key).second) fail(errc::duplicate_edge_in_request, "edge listed twice");
        edge_ids.push_back(id);
    }

    std::size_t rr = node_pairs.size();
    std::vector<double> lambda(rr), w(rr);
    for (std::size_t k = 0; k < rr; ++k) {
        auto [i, j] = node_pairs[k];
        auto lk = difference_eigenvalue(g, i, j);
        if (!lk) return r;
        w[k] = g.edge_at(edge_ids[k]).w;
        if (*lk <= kStructTol || std::abs(w[k] - *lk) <= kStructTol) return r;
        lambda[k] = *lk;
    }

    bool disjoint = true;
    std::set<int> touched;
    for (auto [i, j] : node_pairs) {
        if (!touched.insert(i).second || !touched.insert(j).second) disjoint = false;
    }

    if (disjoint) {
        r.nonadjacent_case = true;
        r.upsilon.resize(rr);
        for (std::size_t k = 0; k < rr; ++k) r.upsilon[k] = lambda[k] - 2.0 * w[k];
    } else {
        // eigenvalues of diag(lambda) - D_w G on span{v_k}; symmetrized via
        // D^{1/2} similarity so the Jacobi solver applies
        matrix s(rr, rr);
        for (std::size_t k = 0; k < rr; ++k) {
            auto [ik, jk] = node_pairs[k];
            for (std::size_t l = 0; l < rr; ++l) {
                auto [il, jl] = node_pairs[l];
                int gram = (ik == il) + (jk == jl) - (ik == jl) - (jk == il);
                s(k, l) = -std::sqrt(w[k] * w[l]) * gram;
            }
            s(k, k) += lambda[k];
        }
        r.upsilon = eigen_sym(s).values;
    }
    r.min_upsilon = *std::min_element(r.upsilon.begin(), r.upsilon.end());
    r.outcome = r.min_upsilon >= tau_value ? removal_outcome::safe : removal_outcome::unsafe;
    return r;
}

std::vector<int> merris_edge_principle(const weighted_graph& g, const eigpair& pair) {
    matrix L = g.laplacian();
    validate_eigpair(L, pair);
    double xn = vec_inf(pair.vector);
    std::vector<int> out;
    for (int id = 0; id < g.edge_count(); ++id) {
        const edge& e = g.edge_at(id);
        double xu = pair.vector[static_cast<std::size_t>(e.u)];
        double xv = pair.vector[static_cast<std::size_t>(e.v)];
        if (std::abs(xu - xv) > kStructTol * xn) continue;
        // confirm on the modified Laplacian
        weighted_graph cut = g.without_edge(id);
        matrix Lp = cut.laplacian();
        std::vector<double> res = Lp.mul(pair.vector);
        bool ok = true;
        for (std::size_t i = 0; i < res.size(); ++i)
            if (std::abs(res[i] - pair.value * pair.vector[i]) > kResidualTol * rel_scale(Lp) * xn) ok = false;
        if (ok) out.push_back(id);
    }
    return out;
}

alternating_result merris_alternating_principle(const weighted_graph& g, const eigpair& pair) {
    matrix L = g.laplacian();
    validate_eigpair(L, pair);
    double xn = vec_inf(pair.vector);
    alternating_result r;
    for (int id = 0; id < g.edge_count(); ++id) {
        const edge& e = g.edge_at(id);
        double xu = pair.vector[static_cast<std::size_t>(e.u)];
        double xv = pair.vector[static_cast<std::size_t>(e.v)];
        if (std::abs(xu + xv) <= kStructTol * xn && std::abs(xu) > kStructTol * xn) r.edges.push_back(id);
    }
    if (r.edges.empty()) {
        r.new_lambda = pair.value;
        r.verified = true;
        return r;
    }

    bool uniform = true;
    double w0 = g.edge_at(r.edges.front()).w;
    for (int id : r.edges)
        if (std::abs(g.edge_at(id).w - w0) > 1e-12 * std::max(1.0, w0)) uniform = false;

    std::vector<edge> kept;
    std::set<int> drop(r.edges.begin(), r.edges.end());
    for (int id = 0; id < g.edge_count(); ++id)
        if (!drop.count(id)) kept.push_back(g.edge_at(id));
    weighted_graph cut = weighted_graph::from_edge_list(g.node_count(), kept);
    matrix Lp = cut.laplacian();

    if (uniform) {
        r.new_lambda = pair.value - 2.0 * w0;
        r.extrapolated = w0 != 1.0;
    } else {
        // no single "lambda - 2w" applies; report the Rayleigh quotient instead
        std::vector<double> Lx = Lp.mul(pair.vector);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < Lx.size(); ++i) {
            num += pair.vector[i] * Lx[i];
            den += pair.vector[i] * pair.vector[i];
        }
        r.new_lambda = num / den;
        r.extrapolated = true;
    }

    std::vector<double> res = Lp.mul(pair.vector);
    r.verified = true;
    for (std::size_t i = 0; i < res.size(); ++i)
        if (std::abs(res[i] - r.new_lambda * pair.vector[i]) > kResidualTol * rel_scale(Lp) * xn) r.verified = false;
    return r;
}

} // namespace ecocut
