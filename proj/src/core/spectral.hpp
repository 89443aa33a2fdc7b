#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eigen_sym.hpp"
#include "graph.hpp"

namespace ecocut {

// Eigenvalues below this count as zero when deciding connectivity.
inline constexpr double kZeroEigTol = 1e-8;

struct fiedler_result {
    double value = 0.0;          // lambda_2, or 0 when disconnected
    std::vector<double> vector;  // unit eigenvector for lambda_2
    bool connected = true;
};

// lambda_2 of the graph Laplacian plus its eigenvector; value 0 flags a
// disconnected graph (lambda_2 = 0 iff disconnected).
fiedler_result fiedler(const weighted_graph& g);

// lambda_2 convention for partition components: singletons count as 0.
double component_lambda2(const weighted_graph& g);

struct bound_entry {
    std::string name;
    double value = 0.0;
    bool applicable = false;
};

struct lambda2_bound_set {
    std::vector<bound_entry> lower; // diameter, mean_distance, nonadjacent_degree
    std::vector<bound_entry> upper; // nonadjacent_pair, min_degree, cut
    bool unweighted_exact = false;  // all weights exactly 1

    double max_applicable_lower() const;
    double min_applicable_upper() const;
};

// Classical lambda2 bounds evaluated on the weighted graph (weighted degrees,
// weighted shortest-path diameter/mean distance). Advisory unless
// unweighted_exact; the degree-based upper bounds are valid for any positive
// weights. The third lower bound uses min over NON-adjacent pairs, the
// complement form of the Anderson-Morley bound (the sign that actually bounds
// lambda_2 from below).
lambda2_bound_set lambda2_bounds(const weighted_graph& g,
                                 const std::optional<std::vector<int>>& subset = std::nullopt);

enum class special_graph_kind { path, cycle, cube, complete, star };

// Closed-form lambda_2 of unit-weight special graphs.
double special_lambda2(special_graph_kind kind, int n);

// All-pairs weighted shortest-path distances (edge length = weight).
std::vector<std::vector<double>> shortest_path_distances(const weighted_graph& g);

} // namespace ecocut
