#include "exhaustive.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "error.hpp"

namespace ecocut {

namespace {

partition_report build_report(const weighted_graph& g, const local_dynamics& dyn, const cut_vector& c,
                              int min_component_size) {
    partition_report rep;
    rep.cutset = c;
    rep.weight = cut_weight(g, c);
    bool sizes_ok = true;
    bool all_stable = true;
    for (const graph_component& comp : apply_cutset(g, c)) {
        component_summary cs;
        cs.nodes = comp.original_nodes;
        cs.lambda2 = component_lambda2(comp.graph);
        if (comp.graph.node_count() < min_component_size) sizes_ok = false;

        local_dynamics part = dyn.restricted(comp.original_nodes);
        double tau_c = tau(part).tau;
        if (comp.graph.node_count() >= 2) cs.prescreen = bound_verdict(comp.graph, tau_c);

        stability_verdict v;
        if (comp.graph.node_count() >= 2) {
            v = network_stability_check(comp.graph, part);
        } else {
            // singleton reachable only with min_component_size < 2; score with
            // lambda2 := 0 rather than through component_stability's error
            v.tau = tau_c;
            v.lambda2 = 0.0;
            v.condition1_ok = !part.has_jacobians() || part.at(0).discriminant() <= 0.0;
            v.condition2_ok = 0.0 >= tau_c;
            v.stable = v.condition1_ok && v.condition2_ok;
        }
        all_stable = all_stable && v.stable;
        rep.components.push_back(std::move(cs));
        rep.verdicts.push_back(std::move(v));
    }
    rep.admissible = sizes_ok && all_stable;
    return rep;
}

} // namespace

std::vector<partition_report> exhaustive_partition(const weighted_graph& g, const local_dynamics& dyn,
                                                   const exhaustive_options& options) {
    if (dyn.size() != g.node_count()) fail(errc::dimension_mismatch, "patch count != node count");
    std::vector<cut_vector> all = enumerate_cutsets(g, options.max_rank); // errors if disconnected/too large

    std::vector<cut_vector> survivors;
    for (const cut_vector& c : all) {
        if (options.min_component_size >= 2) {
            if (has_isolated_node(g, c)) continue;
            if (options.min_component_size > 2) {
                auto comps = apply_cutset(g, c);
                bool ok = std::all_of(comps.begin(), comps.end(), [&](const graph_component& gc) {
                    return gc.graph.node_count() >= options.min_component_size;
                });
                if (!ok) continue;
            }
        }
        survivors.push_back(c);
    }

    std::vector<partition_report> reports(survivors.size());
    unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, survivors.size() ? static_cast<unsigned>(survivors.size()) : 1u);
    if (threads <= 1) {
        for (std::size_t i = 0; i < survivors.size(); ++i)
            reports[i] = build_report(g, dyn, survivors[i], options.min_component_size);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= survivors.size()) return;
                reports[i] = build_report(g, dyn, survivors[i], options.min_component_size);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return reports;
}

std::vector<partition_report> rank_cutsets(const std::vector<partition_report>& reports, rank_objective objective) {
    std::vector<partition_report> out;
    for (const partition_report& r : reports)
        if (r.admissible) out.push_back(r);

    auto min_fiedler = [](const partition_report& r) {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& c : r.components) m = std::min(m, c.lambda2);
        return m;
    };
    switch (objective) {
    case rank_objective::min_weight:
        std::stable_sort(out.begin(), out.end(),
                         [](const auto& a, const auto& b) { return a.weight < b.weight; });
        break;
    case rank_objective::max_weight:
        std::stable_sort(out.begin(), out.end(),
                         [](const auto& a, const auto& b) { return a.weight > b.weight; });
        break;
    case rank_objective::max_min_fiedler:
        std::stable_sort(out.begin(), out.end(),
                         [&](const auto& a, const auto& b) { return min_fiedler(a) > min_fiedler(b); });
        break;
    }
    return out;
}

} // namespace ecocut
