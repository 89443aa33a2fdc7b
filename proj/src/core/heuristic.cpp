#include "heuristic.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>

#include "error.hpp"
#include "rng.hpp"

namespace ecocut {

namespace {

void check_bisection(const weighted_graph& g, const bisection& b) {
    if (static_cast<int>(b.side.size()) != g.node_count())
        fail(errc::dimension_mismatch, "bisection size != node count");
}

// gains over the still-active nodes only; removed nodes vanish from both costs
std::vector<double> reduced_gains(const weighted_graph& g, const std::vector<std::uint8_t>& side,
                                  const std::vector<char>& active) {
    std::vector<double> gain(static_cast<std::size_t>(g.node_count()), 0.0);
    for (const edge& e : g.edges()) {
        std::size_t u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
        if (!active[u] || !active[v]) continue;
        double sgn = (side[u] != side[v]) ? 1.0 : -1.0;
        gain[u] += sgn * e.w;
        gain[v] += sgn * e.w;
    }
    return gain;
}

double side_lambda2(const weighted_graph& g, const std::vector<int>& nodes) {
    if (nodes.size() < 2) return 0.0;
    return component_lambda2(g.induced(nodes).graph);
}

} // namespace

std::vector<double> gains(const weighted_graph& g, const bisection& b) {
    check_bisection(g, b);
    std::vector<char> all(static_cast<std::size_t>(g.node_count()), 1);
    return reduced_gains(g, b.side, all);
}

swap_plan swap_sequence(const weighted_graph& g, const bisection& b) {
    check_bisection(g, b);
    std::vector<char> active(static_cast<std::size_t>(g.node_count()), 1);
    int left = 0, right = 0;
    for (auto s : b.side) (s == 0 ? left : right)++;

    swap_plan plan;
    while (left > 0 && right > 0) {
        std::vector<double> gain = reduced_gains(g, b.side, active);
        int a = -1, bb = -1;
        for (int v = 0; v < g.node_count(); ++v) {
            if (!active[static_cast<std::size_t>(v)]) continue;
            double gv = gain[static_cast<std::size_t>(v)];
            if (b.side[static_cast<std::size_t>(v)] == 0) {
                if (a < 0 || gv > gain[static_cast<std::size_t>(a)]) a = v;
            } else {
                if (bb < 0 || gv > gain[static_cast<std::size_t>(bb)]) bb = v;
            }
        }
        plan.pairs.emplace_back(a, bb);
        active[static_cast<std::size_t>(a)] = 0;
        active[static_cast<std::size_t>(bb)] = 0;
        --left;
        --right;
    }
    return plan;
}

choose_result choose_k(const weighted_graph& g, const bisection& b, const swap_plan& plan, double tau_value) {
    check_bisection(g, b);
    choose_result best;
    int n = g.node_count();
    int kmax = std::min(static_cast<int>(plan.pairs.size()), (n + 1) / 2 - 1);

    bisection current = b;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) {
            auto [a, bb] = plan.pairs[static_cast<std::size_t>(k - 1)];
            std::swap(current.side[static_cast<std::size_t>(a)], current.side[static_cast<std::size_t>(bb)]);
        }
        double l1 = side_lambda2(g, current.nodes_of(0));
        double l2 = side_lambda2(g, current.nodes_of(1));
        best.prefix_lambdas.emplace_back(l1, l2);
        if (l1 >= tau_value && l2 >= tau_value) {
            double theta = std::min(l1, l2);
            if (!best.feasible || theta > best.theta) {
                best.feasible = true;
                best.k = k;
                best.theta = theta;
                best.lambda_c1 = l1;
                best.lambda_c2 = l2;
                best.applied = current;
            }
        }
    }
    return best;
}

partition_report bisection_report(const weighted_graph& g, const local_dynamics& dyn, const bisection& b) {
    check_bisection(g, b);
    partition_report rep;
    rep.cutset = crossing_edges(g, b.side);
    rep.weight = cut_weight(g, rep.cutset);
    bool all_stable = true;
    bool sizes_ok = true;
    for (int s = 0; s < 2; ++s) {
        std::vector<int> nodes = b.nodes_of(s);
        component_summary cs;
        cs.nodes = nodes;
        cs.lambda2 = side_lambda2(g, nodes);
        if (static_cast<int>(nodes.size()) < 2) sizes_ok = false;

        stability_verdict v;
        if (nodes.size() >= 2) {
            auto sub = g.induced(nodes);
            cs.prescreen = sub.graph.connected() ? bound_verdict(sub.graph, tau(dyn.restricted(nodes)).tau)
                                                 : bound_outcome::unstable;
            v = network_stability_check(sub.graph, dyn.restricted(nodes));
        } else {
            v.tau = tau(dyn.restricted(nodes)).tau;
            v.condition2_ok = 0.0 >= v.tau;
            v.condition1_ok = true;
            v.stable = v.condition1_ok && v.condition2_ok;
        }
        all_stable = all_stable && v.stable;
        rep.components.push_back(std::move(cs));
        rep.verdicts.push_back(std::move(v));
    }
    rep.admissible = sizes_ok && all_stable;
    return rep;
}

bisect_result multi_restart_bisect(const weighted_graph& g, const local_dynamics& dyn, int trials,
                                   std::uint64_t seed, const bisect_options& options) {
    if (trials < 1) fail(errc::invalid_argument, "trials must be >= 1");
    if (dyn.size() != g.node_count()) fail(errc::dimension_mismatch, "patch count != node count");
    int n = g.node_count();
    double tau_value = tau(dyn).tau;

    struct trial_outcome {
        choose_result choice;
        bisection start;
    };
    std::vector<trial_outcome> outcomes(static_cast<std::size_t>(trials));

    auto run_trial = [&](int t) {
        splitmix64 rng = splitmix64::stream(seed, static_cast<std::uint64_t>(t));
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        bisection b;
        b.side.assign(static_cast<std::size_t>(n), 1);
        int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i) b.side[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = 0;

        trial_outcome out;
        out.start = b;
        out.choice = choose_k(g, b, swap_sequence(g, b), tau_value);
        outcomes[static_cast<std::size_t>(t)] = std::move(out);
    };

    unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));
    if (threads <= 1) {
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                int t = next.fetch_add(1);
                if (t >= trials) return;
                run_trial(t);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    bisect_result result;
    for (int t = 0; t < trials; ++t) {
        const choose_result& c = outcomes[static_cast<std::size_t>(t)].choice;
        result.trials.push_back({t, c.feasible, c.theta, c.k});
        if (c.feasible && (!result.feasible || c.theta > result.best.theta)) {
            result.feasible = true;
            result.best_trial = t;
            result.best = c;
        }
    }
    if (result.feasible) result.report = bisection_report(g, dyn, result.best.applied);
    return result;
}

bisection spectral_bisect(const weighted_graph& g) {
    if (g.node_count() < 2) fail(errc::too_small, "spectral bisection needs n >= 2");
    fiedler_result f = fiedler(g);
    if (!f.connected) fail(errc::graph_disconnected, "spectral bisection needs a connected graph");
    int n = g.node_count();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double fa = f.vector[static_cast<std::size_t>(a)], fb = f.vector[static_cast<std::size_t>(b)];
        if (fa != fb) return fa < fb;
        return a < b;
    });
    bisection b;
    b.side.assign(static_cast<std::size_t>(n), 1);
    int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) b.side[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 0;
    // the eigenvector's sign is arbitrary; fix the labeling so C1 holds node 0
    if (b.side[0] == 1)
        for (auto& s : b.side) s ^= 1;
    return b;
}

} // namespace ecocut
