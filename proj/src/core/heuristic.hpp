#pragma once

#include <cstdint>
#include <vector>

#include "exhaustive.hpp"
#include "graph.hpp"
#include "stability.hpp"

namespace ecocut {

// Two-sided node assignment; side 0 is C1. ||C1| - |C2|| <= 1 throughout.
struct bisection {
    std::vector<std::uint8_t> side;

    std::vector<int> nodes_of(int which) const {
        std::vector<int> out;
        for (std::size_t v = 0; v < side.size(); ++v)
            if (side[v] == which) out.push_back(static_cast<int>(v));
        return out;
    }
    int imbalance() const {
        int c0 = 0;
        for (auto s : side) c0 += (s == 0);
        return std::abs(2 * c0 - static_cast<int>(side.size()));
    }
};

// Gain E_x - I_x per node: external minus internal incident weight.
std::vector<double> gains(const weighted_graph& g, const bisection& b);

struct swap_plan {
    std::vector<std::pair<int, int>> pairs; // (a_k in C1, b_k in C2)
};

// Greedy pair selection, gains recomputed on the reduced node sets after each
// round; ties broken by lowest node id; stops when either side is exhausted.
swap_plan swap_sequence(const weighted_graph& g, const bisection& b);

struct choose_result {
    bool feasible = false; // false: no prefix reaches tau (NoFeasibleK)
    int k = 0;
    double theta = 0.0;
    double lambda_c1 = 0.0;
    double lambda_c2 = 0.0;
    bisection applied;
    // per-candidate-prefix Fiedler pairs, index = k (0-based includes k = 0)
    std::vector<std::pair<double, double>> prefix_lambdas;
};

// Evaluates prefixes k = 0 .. min(|pairs|, ceil(n/2)-1) and keeps the feasible
// k maximizing min(lambda2_C1, lambda2_C2); theta is that maximum.
choose_result choose_k(const weighted_graph& g, const bisection& b, const swap_plan& plan, double tau_value);

struct trial_summary {
    int trial = 0;
    bool feasible = false;
    double theta = 0.0;
    int k = 0;
};

struct bisect_options {
    int threads = 0; // 0 = available parallelism
};

struct bisect_result {
    bool feasible = false;
    int best_trial = -1;
    choose_result best;
    partition_report report; // sides as components (lambda2 of each side)
    std::vector<trial_summary> trials;
};

// Random balanced starts from per-trial splitmix64 streams; returns the trial
// with maximal theta (ties: lowest trial index). Reproducible from (seed,
// trials) regardless of thread count.
bisect_result multi_restart_bisect(const weighted_graph& g, const local_dynamics& dyn, int trials,
                                   std::uint64_t seed, const bisect_options& options = {});

// Median split of the Fiedler vector; ties at the median by node id.
bisection spectral_bisect(const weighted_graph& g);

// Report for an arbitrary bisection (used for both heuristic and baseline).
partition_report bisection_report(const weighted_graph& g, const local_dynamics& dyn, const bisection& b);

} // namespace ecocut
