#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutspace.hpp"
#include "dynamics.hpp"
#include "graph.hpp"
#include "stability.hpp"

namespace ecocut {

// Parsed network file: the graph plus whatever dynamics information the
// document carried. `models` is nonempty iff per-patch dynamics were given.
struct network_document {
    weighted_graph graph;
    std::vector<patch_model> models;
    std::optional<double> tau_override;

    bool has_dynamics() const { return !models.empty(); }

    // local_dynamics for the stability layer; fails when neither dynamics nor
    // a tau override is present.
    local_dynamics dynamics() const;
};

// Accepts the JSON document schema or plain `u v w` edge-list lines
// ('#' starts a comment). Errors carry line/field context.
network_document parse_network(const std::string& text);

std::string emit_network_json(const network_document& doc);

// DOT text; cut edges dashed, components colored by index. Byte-deterministic.
std::string emit_dot(const weighted_graph& g, const std::optional<cut_vector>& partition = std::nullopt);

struct er_options {
    int n = 0;
    double p = 0.0;
    double wmin = 1.0;
    double wmax = 1.0;
    bool integer_weights = false;
    std::uint64_t seed = 0;
    bool require_connected = false;
    int max_attempts = 1000;
};

// G(n, p) with independent edges and uniform weights; bit-reproducible for a
// given seed. Rejection-samples for connectivity when asked.
weighted_graph generate_er(const er_options& opt);

// Compact, trailing-zero-free number formatting shared by DOT and reports.
std::string format_number(double v);

} // namespace ecocut
