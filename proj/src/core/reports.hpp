#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "document.hpp"
#include "exhaustive.hpp"
#include "heuristic.hpp"

namespace ecocut {

// JSON documents for the CLI's --json mode and the C API. Field names are the
// published schema (schemas/ecocut.schema.json); keep them stable.

std::string analyze_json(const network_document& doc);
std::string exhaustive_json(const network_document& doc, rank_objective objective, int min_component_size,
                            int threads);
std::string bisect_json(const network_document& doc, int trials, std::uint64_t seed, int threads,
                        bool with_spectral_baseline);
std::string edge_check_json(const network_document& doc, const std::vector<std::pair<int, int>>& edges);

struct simulate_result {
    std::string csv;
    std::string summary_json;
    bool converged = false;
};
simulate_result run_simulation(const network_document& doc, double t_end, double dt, double perturb, int stride);

} // namespace ecocut
