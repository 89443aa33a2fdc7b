#pragma once

#include <array>
#include <optional>
#include <vector>

#include "graph.hpp"
#include "spectral.hpp"

namespace ecocut {

// 2x2 Jacobian of the reaction terms at the coexistence equilibrium,
// row-major: [df/dx, df/dy; dg/dx, dg/dy].
struct jacobian2 {
    std::array<double, 4> a{0, 0, 0, 0};
    double trace() const { return a[0] + a[3]; }
    double det() const { return a[0] * a[3] - a[1] * a[2]; }
    double discriminant() const { return trace() * trace() - 4.0 * det(); }
};

// Per-patch local dynamics. Either one Jacobian per patch, or threshold-only
// (tau given directly, patches presumed to satisfy the complex-eigenvalue
// premise).
class local_dynamics {
public:
    static local_dynamics from_jacobians(std::vector<jacobian2> per_patch);
    static local_dynamics uniform(const jacobian2& j, int n);
    static local_dynamics threshold_only(double tau, int n);

    int size() const { return n_; }
    bool has_jacobians() const { return !jac_.empty(); }
    const std::vector<jacobian2>& jacobians() const { return jac_; }
    const jacobian2& at(int i) const { return jac_[static_cast<std::size_t>(i)]; }

    // Dynamics restricted to a node subset (original ids).
    local_dynamics restricted(const std::vector<int>& nodes) const;

    double tau_override_or(double fallback) const { return tau_override_ ? *tau_override_ : fallback; }
    std::optional<double> tau_override() const { return tau_override_; }
    void set_tau_override(double tau) { tau_override_ = tau; }

private:
    int n_ = 0;
    std::vector<jacobian2> jac_;
    std::optional<double> tau_override_;
};

struct stability_threshold {
    double tau = 0.0;
    int argmax_patch = -1;
};

// tau = 1/2 * max_i tr J_i (or the explicit override); ties to lowest patch id.
stability_threshold tau(const local_dynamics& dyn);

enum class patch_verdict { unstable_type1, unstable_type2, not_unstable };

struct patch_instability {
    patch_verdict verdict = patch_verdict::not_unstable;
    // Type1 with a complex eigenvalue pair: the patch can be stabilized by
    // diffusion (condition 1 holds while the isolated patch is unstable).
    bool diffusion_stabilizable = false;
};

patch_instability patch_instability_check(const jacobian2& j);

struct stability_verdict {
    bool stable = false;
    bool condition1_ok = false; // per-patch discriminant test
    bool condition2_ok = false; // lambda2 >= tau
    double lambda2 = 0.0;
    double tau = 0.0;
    bool marginal = false; // lambda2 == tau within tolerance
    std::vector<int> failing_patches;
};

// Conditions 1-2 on a graph with its patch dynamics. Disconnected graphs are
// judged per component (each with tau from its own patches); the reported
// lambda2 is then the whole-graph value 0.
stability_verdict network_stability_check(const weighted_graph& g, const local_dynamics& dyn);

// Per-component verdicts; components carry original node ids so the matching
// patches can be looked up. tau is recomputed from each component's own
// patches when Jacobians are available, else `fallback_tau` applies.
std::vector<stability_verdict> component_stability(const std::vector<graph_component>& components,
                                                   const local_dynamics& dyn, double fallback_tau);

enum class bound_outcome { unstable, stable, indeterminate };

// Decide from the classical bounds alone when possible. Lower-bound
// (Stable) conclusions are only drawn when all weights are 1; the bounds are
// not proven for weighted graphs and a wrong Stable would poison the pipeline.
bound_outcome bound_verdict(const weighted_graph& component, double tau_value);

// Trace-based necessary condition: mean weighted degree >= (n-1)/n * tau.
// false => provably unstable; true is inconclusive.
bool necessary_avg_weight(const weighted_graph& g, double tau_value);

enum class removal_outcome { safe, unsafe, not_applicable };

struct single_removal_result {
    removal_outcome outcome = removal_outcome::not_applicable;
    double lambda = 0.0; // eigenvalue of eps_i - eps_j when applicable
    double limit = 0.0;  // (lambda - tau) / 2
};

// Rank-one update test: is edge (i,j) deletable with lambda2 staying at or above
// tau? Applicable only when eps_i - eps_j is an eigenvector of L(g).
single_removal_result safe_single_edge_removal(const weighted_graph& g, int i, int j, double tau_value);

struct rank_r_removal_result {
    removal_outcome outcome = removal_outcome::not_applicable;
    double min_upsilon = 0.0;
    std::vector<double> upsilon;
    bool nonadjacent_case = false;
};

// Rank-r update test: simultaneous deletion of r edges whose difference vectors are
// eigenvectors; pairwise non-adjacent edges reduce to min(lambda_k - 2 w_k).
rank_r_removal_result safe_rank_r_removal(const weighted_graph& g,
                                          const std::vector<std::pair<int, int>>& node_pairs,
                                          double tau_value);

struct eigpair {
    double value = 0.0;
    std::vector<double> vector;
};

// Merris Edge Principle: edges whose endpoints carry equal eigenvector
// components; removing any one keeps (lambda, x) an eigenpair.
std::vector<int> merris_edge_principle(const weighted_graph& g, const eigpair& pair);

struct alternating_result {
    std::vector<int> edges;  // all adjacent pairs with x(i) = -x(j) != 0
    double new_lambda = 0.0; // lambda - 2w for uniform deleted weight w
    bool verified = false;   // residual check on the modified Laplacian
    bool extrapolated = false; // deleted weight != 1, lambda - 2w generalization
};

// Merris Alternating Principle: deleting all sign-opposed adjacent pairs makes
// x an eigenvector for lambda - 2 (unit weights). The verified flag reports
// whether the predicted eigenpair actually survives on the modified graph.
alternating_result merris_alternating_principle(const weighted_graph& g, const eigpair& pair);

} // namespace ecocut
