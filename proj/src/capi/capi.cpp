#include "ecocut.h"

#include <cstring>
#include <memory>
#include <string>

#include "../core/document.hpp"
#include "../core/error.hpp"
#include "../core/reports.hpp"
#include "../core/spectral.hpp"

using namespace ecocut;

struct ecocut_network {
    network_document doc;
};

namespace {

thread_local std::string g_last_error;

ecocut_status map_code(errc code) {
    switch (code) {
    case errc::parse_error: return ECOCUT_ERR_PARSE;
    case errc::validation_error:
    case errc::duplicate_edge:
    case errc::self_loop:
    case errc::non_positive_weight:
    case errc::id_out_of_range: return ECOCUT_ERR_VALIDATION;
    case errc::graph_disconnected: return ECOCUT_ERR_DISCONNECTED;
    case errc::rank_too_large: return ECOCUT_ERR_RANK_TOO_LARGE;
    case errc::no_convergence: return ECOCUT_ERR_NO_CONVERGENCE;
    case errc::cannot_connect: return ECOCUT_ERR_CANNOT_CONNECT;
    case errc::no_such_edge:
    case errc::duplicate_edge_in_request: return ECOCUT_ERR_NO_SUCH_EDGE;
    case errc::dimension_mismatch:
    case errc::length_mismatch: return ECOCUT_ERR_DIMENSION;
    default: return ECOCUT_ERR_INVALID_ARGUMENT;
    }
}

template <typename Fn> ecocut_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ECOCUT_OK;
    } catch (const error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ECOCUT_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return ECOCUT_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ecocut_status require(bool ok, const char* message) {
    if (ok) return ECOCUT_OK;
    g_last_error = message;
    return ECOCUT_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* ecocut_version(void) { return "1.0.0"; }

const char* ecocut_last_error(void) { return g_last_error.c_str(); }

void ecocut_string_free(char* s) { delete[] s; }

void ecocut_network_free(ecocut_network* net) { delete net; }

ecocut_status ecocut_network_parse(const char* text, ecocut_network** out) {
    if (require(text && out, "text and out must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto* net = new ecocut_network{parse_network(text)};
        *out = net;
    });
}

ecocut_status ecocut_network_from_edges(int32_t n, const int32_t* u, const int32_t* v, const double* w,
                                        int32_t m, ecocut_network** out) {
    if (require(out && (m == 0 || (u && v && w)), "edge arrays must be non-null") != ECOCUT_OK)
        return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        std::vector<edge> edges;
        edges.reserve(static_cast<std::size_t>(m));
        for (int32_t i = 0; i < m; ++i) edges.push_back({u[i], v[i], w[i]});
        auto net = std::make_unique<ecocut_network>();
        net->doc.graph = weighted_graph::from_edge_list(n, edges);
        *out = net.release();
    });
}

ecocut_status ecocut_network_set_uniform_jacobian(ecocut_network* net, const double jacobian[4]) {
    if (require(net && jacobian, "net and jacobian must be non-null") != ECOCUT_OK)
        return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        jacobian2 J;
        J.a = {jacobian[0], jacobian[1], jacobian[2], jacobian[3]};
        net->doc.models.assign(static_cast<std::size_t>(net->doc.graph.node_count()), patch_model::linear(J));
    });
}

ecocut_status ecocut_network_set_tau(ecocut_network* net, double tau) {
    if (require(net != nullptr, "net must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        local_dynamics::threshold_only(tau, net->doc.graph.node_count()); // validates finiteness
        net->doc.tau_override = tau;
    });
}

int32_t ecocut_network_node_count(const ecocut_network* net) {
    return net ? net->doc.graph.node_count() : 0;
}

int32_t ecocut_network_edge_count(const ecocut_network* net) {
    return net ? net->doc.graph.edge_count() : 0;
}

ecocut_status ecocut_network_edge(const ecocut_network* net, int32_t id, int32_t* u, int32_t* v, double* w) {
    if (require(net && u && v && w, "all arguments must be non-null") != ECOCUT_OK)
        return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        if (id < 0 || id >= net->doc.graph.edge_count()) fail(errc::no_such_edge, "edge id out of range");
        const edge& e = net->doc.graph.edge_at(id);
        *u = e.u;
        *v = e.v;
        *w = e.w;
    });
}

int ecocut_network_has_dynamics(const ecocut_network* net) {
    return net && (net->doc.has_dynamics() || net->doc.tau_override) ? 1 : 0;
}

ecocut_status ecocut_network_to_json(const ecocut_network* net, char** out) {
    if (require(net && out, "net and out must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = dup_string(emit_network_json(net->doc)); });
}

ecocut_status ecocut_network_to_dot(const ecocut_network* net, const uint8_t* cut_bits, char** out) {
    if (require(net && out, "net and out must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        std::optional<cut_vector> cut;
        if (cut_bits) {
            std::vector<std::uint8_t> bits(cut_bits, cut_bits + net->doc.graph.edge_count());
            cut = cut_vector::from_bits(bits);
        }
        *out = dup_string(emit_dot(net->doc.graph, cut));
    });
}

ecocut_status ecocut_fiedler(const ecocut_network* net, double* lambda2, double* vec, int* connected) {
    if (require(net && lambda2, "net and lambda2 must be non-null") != ECOCUT_OK)
        return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        fiedler_result f = fiedler(net->doc.graph);
        *lambda2 = f.value;
        if (connected) *connected = f.connected ? 1 : 0;
        if (vec)
            for (std::size_t i = 0; i < f.vector.size(); ++i) vec[i] = f.vector[i];
    });
}

ecocut_status ecocut_analyze_json(const ecocut_network* net, char** out) {
    if (require(net && out, "net and out must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = dup_string(analyze_json(net->doc)); });
}

ecocut_status ecocut_exhaustive_json(const ecocut_network* net, const char* objective,
                                     int32_t min_component_size, int32_t threads, char** out) {
    if (require(net && out, "net and out must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        rank_objective obj = rank_objective::max_weight;
        std::string name = objective ? objective : "max_weight";
        if (name == "min_weight") obj = rank_objective::min_weight;
        else if (name == "max_weight") obj = rank_objective::max_weight;
        else if (name == "max_min_fiedler") obj = rank_objective::max_min_fiedler;
        else fail(errc::invalid_argument, "unknown objective '" + name + "'");
        *out = dup_string(exhaustive_json(net->doc, obj, min_component_size, threads));
    });
}

ecocut_status ecocut_bisect_json(const ecocut_network* net, int32_t trials, uint64_t seed, int32_t threads,
                                 int with_spectral_baseline, char** out) {
    if (require(net && out, "net and out must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = dup_string(bisect_json(net->doc, trials, seed, threads, with_spectral_baseline != 0));
    });
}

ecocut_status ecocut_edge_check_json(const ecocut_network* net, const int32_t* us, const int32_t* vs,
                                     int32_t count, char** out) {
    if (require(net && out && (count == 0 || (us && vs)), "node pair arrays must be non-null") != ECOCUT_OK)
        return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        std::vector<std::pair<int, int>> pairs;
        for (int32_t i = 0; i < count; ++i) pairs.emplace_back(us[i], vs[i]);
        *out = dup_string(edge_check_json(net->doc, pairs));
    });
}

ecocut_status ecocut_simulate(const ecocut_network* net, double t_end, double dt, double perturb,
                              int32_t stride, char** csv_out, char** summary_json_out) {
    if (require(net != nullptr, "net must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        simulate_result res = run_simulation(net->doc, t_end, dt, perturb, stride);
        if (csv_out) *csv_out = dup_string(res.csv);
        if (summary_json_out) *summary_json_out = dup_string(res.summary_json);
    });
}

ecocut_status ecocut_generate_er(int32_t n, double p, double wmin, double wmax, int integer_weights,
                                 uint64_t seed, int require_connected, ecocut_network** out) {
    if (require(out != nullptr, "out must be non-null") != ECOCUT_OK) return ECOCUT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        er_options opt;
        opt.n = n;
        opt.p = p;
        opt.wmin = wmin;
        opt.wmax = wmax;
        opt.integer_weights = integer_weights != 0;
        opt.seed = seed;
        opt.require_connected = require_connected != 0;
        auto net = std::make_unique<ecocut_network>();
        net->doc.graph = generate_er(opt);
        *out = net.release();
    });
}

} // extern "C"
