#pragma once

#include <vector>

#include "cutspace.hpp"
#include "stability.hpp"

namespace ecocut {

struct component_summary {
    std::vector<int> nodes; // original ids
    double lambda2 = 0.0;   // 0 for singletons
    bound_outcome prescreen = bound_outcome::indeterminate;
};

struct partition_report {
    cut_vector cutset;
    double weight = 0.0;
    std::vector<component_summary> components;
    std::vector<stability_verdict> verdicts; // aligned with components
    bool admissible = false;                 // no undersized component and every verdict stable
};

struct exhaustive_options {
    int max_rank = 30;
    int min_component_size = 2; // by default only isolated patches are rejected
    int threads = 0;            // 0 = available parallelism
};

// STEPs 1-4: enumerate the cut space, reject isolating cuts, stability-check
// every surviving component. Reports come back in enumeration order; the
// bound pre-screen outcome is recorded per component, the eigensolver verdict
// is authoritative.
std::vector<partition_report> exhaustive_partition(const weighted_graph& g, const local_dynamics& dyn,
                                                   const exhaustive_options& options = {});

enum class rank_objective { min_weight, max_weight, max_min_fiedler };

// Admissible reports only, stable-sorted by the objective (ties keep
// enumeration order).
std::vector<partition_report> rank_cutsets(const std::vector<partition_report>& reports, rank_objective objective);

} // namespace ecocut
