#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace ecocut {

fiedler_result fiedler(const weighted_graph& g) {
    if (g.node_count() < 2) fail(errc::too_small, "fiedler needs n >= 2");
    spectral_summary s = eigen_sym(g.laplacian());
    fiedler_result r;
    r.vector = s.vector_at(1);
    if (s.values[1] < kZeroEigTol) {
        r.value = 0.0;
        r.connected = false;
    } else {
        r.value = s.values[1];
        r.connected = true;
    }
    return r;
}

double component_lambda2(const weighted_graph& g) {
    if (g.node_count() < 2) return 0.0;
    return fiedler(g).value;
}

double lambda2_bound_set::max_applicable_lower() const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& b : lower)
        if (b.applicable) best = std::max(best, b.value);
    return best;
}

double lambda2_bound_set::min_applicable_upper() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : upper)
        if (b.applicable) best = std::min(best, b.value);
    return best;
}

std::vector<std::vector<double>> shortest_path_distances(const weighted_graph& g) {
    std::size_t n = static_cast<std::size_t>(g.node_count());
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const edge& e : g.edges()) {
        std::size_t u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
        d[u][v] = std::min(d[u][v], e.w);
        d[v][u] = d[u][v];
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

lambda2_bound_set lambda2_bounds(const weighted_graph& g, const std::optional<std::vector<int>>& subset) {
    if (!g.connected()) fail(errc::graph_disconnected, "lambda2_bounds needs a connected graph");
    const int n = g.node_count();
    lambda2_bound_set out;
    out.unweighted_exact = g.unit_weights();

    std::vector<double> deg(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) deg[static_cast<std::size_t>(i)] = g.degree(i);

    auto dist = shortest_path_distances(g);
    double diameter = 0.0, dist_sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            diameter = std::max(diameter, dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            dist_sum += dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    double mean_dist = pairs > 0.0 ? dist_sum / pairs : 0.0;

    bound_entry lo_diam{"4/(n*D)", 0.0, false};
    if (n >= 2 && diameter > 0.0) {
        lo_diam.value = 4.0 / (n * diameter);
        lo_diam.applicable = true;
    }
    out.lower.push_back(lo_diam);

    bound_entry lo_mean{"4/(2(n-1)*dbar-n+2)", 0.0, false};
    double denom = 2.0 * (n - 1) * mean_dist - n + 2;
    if (n >= 2 && denom > 0.0) {
        lo_mean.value = 4.0 / denom;
        lo_mean.applicable = true;
    }
    out.lower.push_back(lo_mean);

    // complement Anderson-Morley; needs a non-adjacent pair. May be negative
    // (vacuously true).
    bound_entry lo_nonadj{"min_nonadj(di+dj)-(n-2)", 0.0, false};
    bound_entry up_nonadj{"min_nonadj(di+dj)/2", 0.0, false};
    double min_nonadj = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.find_edge(i, j) < 0)
                min_nonadj = std::min(min_nonadj, deg[static_cast<std::size_t>(i)] + deg[static_cast<std::size_t>(j)]);
    if (std::isfinite(min_nonadj)) {
        lo_nonadj.value = min_nonadj - (n - 2);
        lo_nonadj.applicable = true;
        up_nonadj.value = 0.5 * min_nonadj;
        up_nonadj.applicable = true;
    }
    out.lower.push_back(lo_nonadj);
    out.upper.push_back(up_nonadj);

    bound_entry up_mindeg{"n/(n-1)*delta", 0.0, false};
    if (n >= 2) {
        up_mindeg.value = static_cast<double>(n) / (n - 1) * *std::min_element(deg.begin(), deg.end());
        up_mindeg.applicable = true;
    }
    out.upper.push_back(up_mindeg);

    bound_entry up_cut{"n*E(S,Sbar)/(|S|(n-|S|))", 0.0, false};
    if (subset && !subset->empty() && static_cast<int>(subset->size()) < n) {
        std::vector<std::uint8_t> in_s(static_cast<std::size_t>(n), 0);
        for (int v : *subset) {
            if (v < 0 || v >= n) fail(errc::id_out_of_range, "subset node id out of range");
            in_s[static_cast<std::size_t>(v)] = 1;
        }
        double cut = 0.0;
        for (const edge& e : g.edges())
            if (in_s[static_cast<std::size_t>(e.u)] != in_s[static_cast<std::size_t>(e.v)]) cut += e.w;
        double s = static_cast<double>(subset->size());
        up_cut.value = n * cut / (s * (n - s));
        up_cut.applicable = true;
    }
    out.upper.push_back(up_cut);

    return out;
}

double special_lambda2(special_graph_kind kind, int n) {
    const double pi = std::numbers::pi;
    switch (kind) {
    case special_graph_kind::path:
        if (n < 2) fail(errc::invalid_n, "path closed form needs n >= 2");
        return 2.0 * (1.0 - std::cos(pi / n));
    case special_graph_kind::cycle:
        if (n < 3) fail(errc::invalid_n, "cycle closed form needs n >= 3");
        return 2.0 * (1.0 - std::cos(2.0 * pi / n));
    case special_graph_kind::cube:
        if (n != 8) fail(errc::invalid_n, "cube closed form is for the 3-cube, n = 8");
        return 2.0;
    case special_graph_kind::complete:
        if (n < 2) fail(errc::invalid_n, "complete closed form needs n >= 2");
        return static_cast<double>(n);
    case special_graph_kind::star:
        if (n < 3) fail(errc::invalid_n, "star closed form needs n >= 3");
        return 1.0;
    }
    fail(errc::invalid_argument, "unknown special graph kind");
}

} // namespace ecocut
