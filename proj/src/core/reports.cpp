#include "reports.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"

namespace ecocut {

using ordered = nlohmann::ordered_json;

namespace {

ordered bounds_json(const lambda2_bound_set& b) {
    ordered out;
    out["unweighted_exact"] = b.unweighted_exact;
    auto side = [](const std::vector<bound_entry>& entries) {
        ordered arr = ordered::array();
        for (const bound_entry& e : entries) {
            ordered one;
            one["name"] = e.name;
            one["applicable"] = e.applicable;
            if (e.applicable) one["value"] = e.value;
            arr.push_back(one);
        }
        return arr;
    };
    out["lower"] = side(b.lower);
    out["upper"] = side(b.upper);
    return out;
}

ordered edge_json(const weighted_graph& g, int id) {
    const edge& e = g.edge_at(id);
    return ordered{{"id", id}, {"u", e.u}, {"v", e.v}, {"w", e.w}};
}

ordered component_json(const component_summary& c, const stability_verdict& v) {
    ordered out;
    out["nodes"] = c.nodes;
    out["lambda2"] = c.lambda2;
    out["tau"] = v.tau;
    out["stable"] = v.stable;
    return out;
}

const char* outcome_name(removal_outcome o) {
    switch (o) {
    case removal_outcome::safe: return "safe";
    case removal_outcome::unsafe: return "unsafe";
    case removal_outcome::not_applicable: return "not_applicable";
    }
    return "not_applicable";
}

} // namespace

std::string analyze_json(const network_document& doc) {
    const weighted_graph& g = doc.graph;
    local_dynamics dyn = doc.dynamics();
    stability_verdict v = network_stability_check(g, dyn);

    ordered out;
    out["report"] = "analyze";
    out["n"] = g.node_count();
    out["m"] = g.edge_count();
    bool connected = g.connected();
    out["connected"] = connected;
    out["lambda2"] = g.node_count() >= 2 ? component_lambda2(g) : 0.0;
    out["tau"] = v.tau;
    out["condition1_ok"] = v.condition1_ok;
    out["condition2_ok"] = v.condition2_ok;
    out["stable"] = v.stable;
    out["marginal"] = v.marginal;
    out["failing_patches"] = v.failing_patches;
    out["bounds"] = connected && g.node_count() >= 2 ? bounds_json(lambda2_bounds(g)) : ordered(nullptr);
    ordered t3;
    t3["applicable"] = g.node_count() >= 3;
    if (g.node_count() >= 3) {
        t3["avg_degree"] = 2.0 * g.total_weight() / g.node_count();
        t3["threshold"] = (static_cast<double>(g.node_count() - 1) / g.node_count()) * v.tau;
        t3["ok"] = necessary_avg_weight(g, v.tau);
    }
    out["necessary_condition"] = t3;
    return out.dump(2) + "\n";
}

std::string exhaustive_json(const network_document& doc, rank_objective objective, int min_component_size,
                            int threads) {
    const weighted_graph& g = doc.graph;
    local_dynamics dyn = doc.dynamics();
    exhaustive_options opt;
    opt.min_component_size = min_component_size;
    opt.threads = threads;
    std::vector<partition_report> reports = exhaustive_partition(g, dyn, opt);
    std::vector<partition_report> ranked = rank_cutsets(reports, objective);

    ordered out;
    out["report"] = "exhaustive";
    out["n"] = g.node_count();
    out["m"] = g.edge_count();
    out["tau"] = tau(dyn).tau;
    out["lambda2"] = component_lambda2(g);
    switch (objective) {
    case rank_objective::min_weight: out["objective"] = "min_weight"; break;
    case rank_objective::max_weight: out["objective"] = "max_weight"; break;
    case rank_objective::max_min_fiedler: out["objective"] = "max_min_fiedler"; break;
    }
    out["min_component_size"] = min_component_size;
    std::size_t r = static_cast<std::size_t>(g.node_count()) - 1;
    out["enumerated"] = (std::uint64_t{1} << r) - 1;
    out["survivors"] = reports.size();

    ordered arr = ordered::array();
    for (const partition_report& rep : reports) {
        ordered one;
        one["bits"] = rep.cutset.to_string();
        ordered edges = ordered::array();
        for (int id : rep.cutset.edge_ids()) edges.push_back(edge_json(g, id));
        one["edges"] = edges;
        one["weight"] = rep.weight;
        ordered comps = ordered::array();
        for (std::size_t i = 0; i < rep.components.size(); ++i)
            comps.push_back(component_json(rep.components[i], rep.verdicts[i]));
        one["components"] = comps;
        one["admissible"] = rep.admissible;
        arr.push_back(one);
    }
    out["cutsets"] = arr;

    ordered order = ordered::array();
    for (const partition_report& rep : ranked) {
        for (std::size_t i = 0; i < reports.size(); ++i)
            if (reports[i].cutset == rep.cutset) {
                order.push_back(i);
                break;
            }
    }
    out["ranked"] = order;
    out["admissible_count"] = ranked.size();
    return out.dump(2) + "\n";
}

namespace {

ordered bisection_json(const weighted_graph& g, const local_dynamics& dyn, const bisection& b) {
    partition_report rep = bisection_report(g, dyn, b);
    ordered out;
    ordered sides = ordered::array();
    ordered lambdas = ordered::array();
    for (std::size_t i = 0; i < rep.components.size(); ++i) {
        sides.push_back(rep.components[i].nodes);
        lambdas.push_back(rep.components[i].lambda2);
    }
    out["sides"] = sides;
    out["lambda2"] = lambdas;
    ordered cut = ordered::array();
    for (int id : rep.cutset.edge_ids()) cut.push_back(edge_json(g, id));
    out["cut_edges"] = cut;
    out["cut_weight"] = rep.weight;
    out["admissible"] = rep.admissible;
    return out;
}

} // namespace

std::string bisect_json(const network_document& doc, int trials, std::uint64_t seed, int threads,
                        bool with_spectral_baseline) {
    const weighted_graph& g = doc.graph;
    local_dynamics dyn = doc.dynamics();
    bisect_options opt;
    opt.threads = threads;
    bisect_result res = multi_restart_bisect(g, dyn, trials, seed, opt);

    ordered out;
    out["report"] = "bisect";
    out["n"] = g.node_count();
    out["tau"] = tau(dyn).tau;
    out["trials"] = trials;
    out["seed"] = seed;
    out["feasible"] = res.feasible;
    if (res.feasible) {
        ordered best = bisection_json(g, dyn, res.best.applied);
        best["trial"] = res.best_trial;
        best["k"] = res.best.k;
        best["theta"] = res.best.theta;
        out["best"] = best;
    } else {
        out["best"] = nullptr;
    }
    if (with_spectral_baseline) {
        bisection sb = spectral_bisect(g);
        ordered base = bisection_json(g, dyn, sb);
        double theta = std::min(base["lambda2"][0].get<double>(), base["lambda2"][1].get<double>());
        base["method"] = "spectral";
        base["theta"] = theta;
        out["baseline"] = base;
    }
    ordered ts = ordered::array();
    for (const trial_summary& t : res.trials)
        ts.push_back(ordered{{"trial", t.trial}, {"feasible", t.feasible}, {"theta", t.theta}, {"k", t.k}});
    out["trials_summary"] = ts;
    return out.dump(2) + "\n";
}

std::string edge_check_json(const network_document& doc, const std::vector<std::pair<int, int>>& edges) {
    const weighted_graph& g = doc.graph;
    local_dynamics dyn = doc.dynamics();
    double tau_value = tau(dyn).tau;

    ordered out;
    out["report"] = "edge_check";
    out["tau"] = tau_value;

    ordered singles = ordered::array();
    for (auto [u, v] : edges) {
        single_removal_result r = safe_single_edge_removal(g, u, v, tau_value);
        ordered one;
        one["u"] = u;
        one["v"] = v;
        one["outcome"] = outcome_name(r.outcome);
        if (r.outcome != removal_outcome::not_applicable) {
            one["lambda"] = r.lambda;
            one["limit"] = r.limit;
        }
        int id = g.find_edge(u, v);
        weighted_graph cutg = g.without_edge(id);
        one["post_lambda2"] = cutg.node_count() >= 2 ? component_lambda2(cutg) : 0.0;
        singles.push_back(one);
    }
    out["single_removal"] = singles;

    ordered t5;
    rank_r_removal_result rr = safe_rank_r_removal(g, edges, tau_value);
    t5["outcome"] = outcome_name(rr.outcome);
    t5["nonadjacent"] = rr.nonadjacent_case;
    if (rr.outcome != removal_outcome::not_applicable) {
        t5["min_upsilon"] = rr.min_upsilon;
        t5["upsilon"] = rr.upsilon;
    }
    out["joint_removal"] = t5;

    ordered merris;
    if (g.node_count() >= 2) {
        fiedler_result f = fiedler(g);
        eigpair pair{f.value, f.vector};
        merris["lambda2"] = f.value;
        merris["fiedler_vector"] = f.vector;
        ordered ep = ordered::array();
        for (int id : merris_edge_principle(g, pair)) ep.push_back(edge_json(g, id));
        merris["edge_principle"] = ep;
        alternating_result alt = merris_alternating_principle(g, pair);
        ordered av;
        ordered ae = ordered::array();
        for (int id : alt.edges) ae.push_back(edge_json(g, id));
        av["edges"] = ae;
        av["new_lambda"] = alt.new_lambda;
        av["verified"] = alt.verified;
        av["extrapolated"] = alt.extrapolated;
        merris["alternating"] = av;
    }
    out["merris"] = merris;
    return out.dump(2) + "\n";
}

simulate_result run_simulation(const network_document& doc, double t_end, double dt, double perturb, int stride) {
    if (!doc.has_dynamics())
        fail(errc::validation_error, "simulate needs patch dynamics (jacobian or rosenzweig model)");
    const weighted_graph& g = doc.graph;
    int n = g.node_count();
    std::vector<double> state(static_cast<std::size_t>(2 * n));
    std::vector<double> pattern = perturbation_pattern(n);
    for (int i = 0; i < n; ++i) {
        auto [xs, ys] = doc.models[static_cast<std::size_t>(i)].equilibrium();
        state[static_cast<std::size_t>(i)] = xs + perturb * pattern[static_cast<std::size_t>(i)];
        state[static_cast<std::size_t>(n + i)] = ys + perturb * pattern[static_cast<std::size_t>(i)];
    }
    int steps = std::max(1, static_cast<int>(std::llround(t_end / dt)));
    trajectory tr = integrate(g, doc.models, state, dt, steps, stride);

    double initial = tr.max_deviation.front();
    double min_dev = initial, max_dev = initial, min_time = 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        if (tr.max_deviation[i] < min_dev) {
            min_dev = tr.max_deviation[i];
            min_time = tr.times[i];
        }
        max_dev = std::max(max_dev, tr.max_deviation[i]);
    }
    // converged: the transverse perturbation shrank by at least 10x at some
    // point in the run (see README on the always-unstable uniform mode)
    bool converged = min_dev <= 0.1 * initial;

    ordered out;
    out["report"] = "simulate";
    out["n"] = n;
    out["t_end"] = t_end;
    out["dt"] = dt;
    out["steps"] = steps;
    out["stride"] = stride;
    out["perturb"] = perturb;
    out["initial_deviation"] = initial;
    out["final_deviation"] = tr.max_deviation.back();
    out["min_deviation"] = min_dev;
    out["min_deviation_time"] = min_time;
    out["max_deviation"] = max_dev;
    out["diverged"] = tr.diverged;
    out["converged"] = converged;

    simulate_result res;
    res.csv = trajectory_csv(tr, n);
    res.summary_json = out.dump(2) + "\n";
    res.converged = converged;
    return res;
}

} // namespace ecocut
