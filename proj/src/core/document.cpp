#include "document.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"

namespace ecocut {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

local_dynamics network_document::dynamics() const {
    if (!models.empty()) {
        local_dynamics d = dynamics_of(models);
        if (tau_override) d.set_tau_override(*tau_override);
        return d;
    }
    if (tau_override) return local_dynamics::threshold_only(*tau_override, graph.node_count());
    fail(errc::validation_error, "document carries no dynamics and no tau; supply them in the file or via flags");
}

namespace {

patch_model parse_patch(const json& entry, int node) {
    std::string where = "dynamics[" + std::to_string(node) + "]";
    if (!entry.is_object()) fail(errc::validation_error, where + " must be an object");
    if (entry.contains("jacobian")) {
        const json& jj = entry["jacobian"];
        if (!jj.is_array() || jj.size() != 2 || !jj[0].is_array() || jj[0].size() != 2 || jj[1].size() != 2)
            fail(errc::validation_error, where + ".jacobian must be a 2x2 array");
        jacobian2 J;
        J.a = {jj[0][0].get<double>(), jj[0][1].get<double>(), jj[1][0].get<double>(), jj[1][1].get<double>()};
        double xs = 1.0, ys = 1.0;
        if (entry.contains("equilibrium")) {
            const json& eq = entry["equilibrium"];
            if (!eq.is_array() || eq.size() != 2) fail(errc::validation_error, where + ".equilibrium must be [x, y]");
            xs = eq[0].get<double>();
            ys = eq[1].get<double>();
        }
        return patch_model::linear(J, xs, ys);
    }
    if (entry.contains("model")) {
        if (entry["model"].get<std::string>() != "rosenzweig")
            fail(errc::validation_error, where + ".model must be \"rosenzweig\"");
        rosenzweig_params p;
        if (entry.contains("params")) {
            const json& pp = entry["params"];
            auto get = [&](const char* key, double fallback) {
                return pp.contains(key) ? pp[key].get<double>() : fallback;
            };
            p.r = get("r", p.r);
            p.K = get("K", p.K);
            p.a = get("a", p.a);
            p.h = get("h", p.h);
            p.e = get("e", p.e);
            p.m = get("m", p.m);
        }
        return patch_model::rosenzweig(p);
    }
    fail(errc::validation_error, where + " needs either a jacobian or a model");
}

network_document parse_json_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(errc::validation_error, "top-level document must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        fail(errc::validation_error, "field 'n' (node count) is required");
    int n = doc["n"].get<int>();
    if (!doc.contains("edges") || !doc["edges"].is_array())
        fail(errc::validation_error, "field 'edges' must be an array");

    std::vector<edge> edges;
    int idx = 0;
    for (const json& e : doc["edges"]) {
        std::string where = "edges[" + std::to_string(idx) + "]";
        if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("w"))
            fail(errc::validation_error, where + " must be an object with u, v, w");
        edges.push_back({e["u"].get<int>(), e["v"].get<int>(), e["w"].get<double>()});
        ++idx;
    }

    network_document out;
    try {
        out.graph = weighted_graph::from_edge_list(n, edges);
    } catch (const error& e) {
        fail(errc::validation_error, e.what());
    }

    if (doc.contains("dynamics")) {
        const json& dyn = doc["dynamics"];
        if (dyn.is_object()) {
            patch_model m = parse_patch(dyn, 0);
            out.models.assign(static_cast<std::size_t>(n), m);
        } else if (dyn.is_array()) {
            if (static_cast<int>(dyn.size()) != n)
                fail(errc::validation_error, "dynamics array must have one entry per node");
            for (int i = 0; i < n; ++i) out.models.push_back(parse_patch(dyn[static_cast<std::size_t>(i)], i));
        } else {
            fail(errc::validation_error, "dynamics must be an object or an array");
        }
    }
    if (doc.contains("tau")) {
        double t = doc["tau"].get<double>();
        if (!std::isfinite(t)) fail(errc::validation_error, "tau override must be finite");
        out.tau_override = t;
    }
    return out;
}

network_document parse_edge_list(const std::string& text) {
    std::vector<edge> edges;
    int max_id = -1;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int u, v;
        double w;
        if (!(ls >> u)) continue; // blank/comment line
        if (!(ls >> v >> w)) fail(errc::parse_error, "line " + std::to_string(lineno) + ": expected 'u v w'");
        std::string rest;
        if (ls >> rest) fail(errc::parse_error, "line " + std::to_string(lineno) + ": trailing content '" + rest + "'");
        edges.push_back({u, v, w});
        max_id = std::max({max_id, u, v});
    }
    if (edges.empty()) fail(errc::parse_error, "no edges found in edge-list input");
    network_document out;
    try {
        out.graph = weighted_graph::from_edge_list(max_id + 1, edges);
    } catch (const error& e) {
        fail(errc::validation_error, e.what());
    }
    return out;
}

} // namespace

network_document parse_network(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') {
            try {
                return parse_json_document(text);
            } catch (const json::exception& e) {
                // wrong field types and similar misuse surface here
                fail(errc::validation_error, std::string("malformed document: ") + e.what());
            }
        }
        break;
    }
    return parse_edge_list(text);
}

std::string emit_network_json(const network_document& doc) {
    ordered j;
    j["n"] = doc.graph.node_count();
    j["edges"] = ordered::array();
    for (const edge& e : doc.graph.edges()) j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}});
    if (!doc.models.empty()) {
        ordered dyn = ordered::array();
        for (const patch_model& m : doc.models) {
            ordered entry;
            if (m.kind() == patch_model::kind_t::linear) {
                const auto& a = m.jacobian().a;
                entry["jacobian"] = {{a[0], a[1]}, {a[2], a[3]}};
                auto [xs, ys] = m.equilibrium();
                entry["equilibrium"] = {xs, ys};
            } else {
                const rosenzweig_params& p = m.params();
                entry["model"] = "rosenzweig";
                entry["params"] = {{"r", p.r}, {"K", p.K}, {"a", p.a}, {"h", p.h}, {"e", p.e}, {"m", p.m}};
            }
            dyn.push_back(entry);
        }
        j["dynamics"] = dyn;
    }
    if (doc.tau_override) j["tau"] = *doc.tau_override;
    return j.dump(2) + "\n";
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string emit_dot(const weighted_graph& g, const std::optional<cut_vector>& partition) {
    static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple",
                                    "brown", "cyan4", "magenta", "gold3", "gray40"};
    std::string out = "graph habitat {\n  node [shape=circle];\n";
    std::vector<int> color(static_cast<std::size_t>(g.node_count()), 0);
    if (partition) {
        auto comps = apply_cutset(g, *partition);
        for (std::size_t k = 0; k < comps.size(); ++k)
            for (int v : comps[k].original_nodes) color[static_cast<std::size_t>(v)] = static_cast<int>(k);
    }
    for (int v = 0; v < g.node_count(); ++v) {
        out += "  " + std::to_string(v);
        if (partition)
            out += " [color=" + std::string(palette[color[static_cast<std::size_t>(v)] % 10]) + "]";
        out += ";\n";
    }
    for (int id = 0; id < g.edge_count(); ++id) {
        const edge& e = g.edge_at(id);
        out += "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) + " [label=\"" + format_number(e.w) + "\"";
        if (partition && partition->test(id)) out += ", style=dashed";
        out += "];\n";
    }
    out += "}\n";
    return out;
}

weighted_graph generate_er(const er_options& opt) {
    if (opt.n < 1) fail(errc::invalid_argument, "n must be >= 1");
    if (!(opt.p >= 0.0 && opt.p <= 1.0)) fail(errc::bad_probability, "p must lie in [0, 1]");
    if (opt.wmin > opt.wmax) fail(errc::invalid_argument, "wmin must not exceed wmax");
    if (!(opt.wmin > 0.0)) fail(errc::non_positive_weight, "weights must be positive");

    splitmix64 rng(opt.seed);
    for (int attempt = 0; attempt < std::max(1, opt.max_attempts); ++attempt) {
        std::vector<edge> edges;
        for (int i = 0; i < opt.n; ++i) {
            for (int j = i + 1; j < opt.n; ++j) {
                if (rng.next_double() >= opt.p) continue;
                double w;
                if (opt.integer_weights) {
                    auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(opt.wmin)));
                    auto hi = std::max(lo, static_cast<std::int64_t>(std::llround(opt.wmax)));
                    w = static_cast<double>(lo + static_cast<std::int64_t>(
                                                     rng.next_below(static_cast<std::uint64_t>(hi - lo + 1))));
                } else {
                    w = opt.wmin + (opt.wmax - opt.wmin) * rng.next_double();
                }
                edges.push_back({i, j, w});
            }
        }
        weighted_graph g = weighted_graph::from_edge_list(opt.n, edges);
        if (!opt.require_connected || g.connected()) return g;
    }
    fail(errc::cannot_connect, "no connected sample within the attempt cap");
}

} // namespace ecocut
