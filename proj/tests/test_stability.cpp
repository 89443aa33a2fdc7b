#include <doctest.h>

#include <cmath>

#include "core/cutspace.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/stability.hpp"
#include "support.hpp"

using namespace ecocut;
using testsupport::bits;
using testsupport::g56;

namespace {
const jacobian2 kFocusJ{{3, -5, 5, 3}}; // trace 6, det 34, discriminant -100
}

TEST_CASE("tau from patch traces") {
    stability_threshold t = tau(local_dynamics::uniform(kFocusJ, 5));
    CHECK(t.tau == doctest::Approx(3.0));
    CHECK(t.argmax_patch == 0);

    CHECK(tau(local_dynamics::from_jacobians({jacobian2{{0, 1, -1, 0}}})).tau == doctest::Approx(0.0));

    local_dynamics two = local_dynamics::from_jacobians({jacobian2{{2, 0, 0, 2}}, jacobian2{{3, 0, 0, 3}}});
    stability_threshold t2 = tau(two);
    CHECK(t2.tau == doctest::Approx(3.0));
    CHECK(t2.argmax_patch == 1);

    CHECK_THROWS_AS(local_dynamics::from_jacobians({}), error);
    CHECK(tau(local_dynamics::threshold_only(2.5, 4)).tau == doctest::Approx(2.5));
}

TEST_CASE("patch instability classification") {
    patch_instability p1 = patch_instability_check(kFocusJ);
    CHECK(p1.verdict == patch_verdict::unstable_type1);
    CHECK(p1.diffusion_stabilizable);

    patch_instability p2 = patch_instability_check(jacobian2{{-1, 2, 2, -1}});
    CHECK(p2.verdict == patch_verdict::unstable_type2);

    CHECK(patch_instability_check(jacobian2{{-1, 0, 0, -1}}).verdict == patch_verdict::not_unstable);
}

TEST_CASE("condition-1 forms are equivalent over the instability premise") {
    splitmix64 rng(123);
    int checked = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        jacobian2 J;
        for (auto& v : J.a) v = 8.0 * rng.next_double() - 4.0;
        double lambda = 12.0 * rng.next_double();
        double quad = lambda * lambda - lambda * J.trace() + J.det();
        if (J.discriminant() <= 0.0) {
            CHECK(quad >= -1e-12);
            ++checked;
        } else if (J.trace() > 0.0 || J.det() < 0.0) {
            // some lambda >= 0 must violate the quadratic form
            double probe = J.trace() > 0.0 ? 0.5 * J.trace() : 0.0;
            double violating = probe * probe - probe * J.trace() + J.det();
            CHECK(violating < 0.0);
            ++checked;
        }
    }
    CHECK(checked > 10000);
}

TEST_CASE("network stability on the worked example") {
    weighted_graph g = g56();
    local_dynamics dyn = local_dynamics::uniform(kFocusJ, 5);
    stability_verdict v = network_stability_check(g, dyn);
    CHECK(v.stable);
    CHECK(v.condition1_ok);
    CHECK(v.condition2_ok);
    CHECK(v.lambda2 == doctest::Approx(3.625).epsilon(1e-3));
    CHECK(v.tau == doctest::Approx(3.0));
    CHECK(v.failing_patches.empty());

    // two-node component {v1, v5}, weight 2: lambda2 = 4 >= 3
    weighted_graph pair = weighted_graph::from_edge_list(2, {{0, 1, 2}});
    CHECK(network_stability_check(pair, local_dynamics::uniform(kFocusJ, 2)).condition2_ok);

    // three-node component with lambda2 ~ 2.35 < 3: unstable
    weighted_graph trio = weighted_graph::from_edge_list(3, {{0, 1, 2}, {1, 2, 3}});
    stability_verdict vt = network_stability_check(trio, local_dynamics::uniform(kFocusJ, 3));
    CHECK_FALSE(vt.stable);
    CHECK(vt.condition1_ok);
    CHECK_FALSE(vt.condition2_ok);

    CHECK_THROWS_AS(network_stability_check(g, local_dynamics::uniform(kFocusJ, 4)), error);
}

TEST_CASE("condition-1 violators are listed") {
    jacobian2 bad{{2, 0, 0, 1}}; // trace 3, det 2, disc 1 > 0
    local_dynamics dyn = local_dynamics::from_jacobians({kFocusJ, bad, kFocusJ});
    stability_verdict v = network_stability_check(make_path(3, 10.0), dyn);
    CHECK_FALSE(v.condition1_ok);
    CHECK(v.failing_patches == std::vector<int>{1});
}

TEST_CASE("exact threshold hit is stable and marked marginal") {
    weighted_graph p2 = make_path(2); // lambda2 = 2
    stability_verdict v = network_stability_check(p2, local_dynamics::threshold_only(2.0, 2));
    CHECK(v.stable);
    CHECK(v.marginal);
    stability_verdict below = network_stability_check(p2, local_dynamics::threshold_only(1.5, 2));
    CHECK(below.stable);
    CHECK_FALSE(below.marginal);
}

TEST_CASE("disconnected input is judged per component") {
    // two strong unit K3s, tau = 0.5: each component stable although the whole
    // graph has lambda2 = 0
    std::vector<edge> edges;
    for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}) edges.push_back({u, v, 1.0});
    weighted_graph g = weighted_graph::from_edge_list(6, edges);
    jacobian2 mild{{0.5, -2, 2, 0.5}}; // tau = 0.5, disc < 0
    stability_verdict v = network_stability_check(g, local_dynamics::uniform(mild, 6));
    CHECK(v.lambda2 == 0.0);
    CHECK(v.stable); // lambda2(K3) = 3 >= 0.5 on both sides

    // an isolated patch with tau > 0 can never pass condition 2
    weighted_graph lonely = weighted_graph::from_edge_list(3, {{0, 1, 5.0}});
    stability_verdict lv = network_stability_check(lonely, local_dynamics::uniform(mild, 3));
    CHECK_FALSE(lv.stable);
}

TEST_CASE("component verdicts for the example's cuts") {
    weighted_graph g = g56();
    local_dynamics dyn = local_dynamics::uniform(kFocusJ, 5);

    auto s3 = component_stability(apply_cutset(g, bits("010100")), dyn, 3.0);
    REQUIRE(s3.size() == 2);
    CHECK(s3[0].lambda2 == doctest::Approx(4.268).epsilon(1e-3)); // {v1,v2,v5}
    CHECK(s3[1].lambda2 == doctest::Approx(6.0));                 // {v3,v4}
    CHECK(s3[0].stable);
    CHECK(s3[1].stable);

    auto s5 = component_stability(apply_cutset(g, bits("001011")), dyn, 3.0);
    REQUIRE(s5.size() == 2);
    CHECK(s5[0].lambda2 == doctest::Approx(2.354).epsilon(1e-3));
    CHECK(s5[1].lambda2 == doctest::Approx(10.0));
    CHECK_FALSE(s5[0].stable);
    CHECK(s5[1].stable);

    // tau = 0: every connected component is stable under condition 2
    auto relaxed = component_stability(apply_cutset(g, bits("010100")),
                                       local_dynamics::threshold_only(0.0, 5), 0.0);
    for (const auto& v : relaxed) CHECK(v.stable);

    CHECK_THROWS_AS(component_stability(apply_cutset(g, bits("100010")), dyn, 3.0), error); // singleton
}

TEST_CASE("bound-based verdicts") {
    CHECK(bound_verdict(make_star(5), 2.0) == bound_outcome::unstable);      // tau > 1.25 upper
    CHECK(bound_verdict(make_path(2), 1.0) == bound_outcome::stable);        // tau < 2 lower
    CHECK(bound_verdict(make_cycle(5), 1.0) == bound_outcome::indeterminate);

    // weighted graphs never conclude Stable from the advisory lower bounds
    weighted_graph heavy = weighted_graph::from_edge_list(2, {{0, 1, 0.5}});
    CHECK(bound_verdict(heavy, 0.9) != bound_outcome::stable); // lambda2 = 1, 4/(nD) = 4 would lie
    CHECK_THROWS_AS(bound_verdict(weighted_graph::from_edge_list(3, {{0, 1, 1}}), 1.0), error);
}

TEST_CASE("bound verdicts never contradict the eigensolver") {
    splitmix64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng.next_below(6));
        bool unit = trial % 2 == 0;
        weighted_graph g = testsupport::random_connected_graph(rng, n, 0.4, unit ? 1.0 : 0.3, unit ? 1.0 : 3.0);
        double l2 = fiedler(g).value;
        double t = 3.0 * rng.next_double();
        switch (bound_verdict(g, t)) {
        case bound_outcome::unstable: CHECK(l2 < t); break;
        case bound_outcome::stable: CHECK(l2 >= t); break;
        case bound_outcome::indeterminate: break;
        }
    }
}

TEST_CASE("necessary average-degree condition") {
    weighted_graph k4 = make_complete(4);
    CHECK(necessary_avg_weight(k4, 4.0));        // 3 >= 3
    CHECK_FALSE(necessary_avg_weight(k4, 4.1));  // 3 < 3.075: provably unstable
    CHECK(necessary_avg_weight(k4, 0.0));
    CHECK_THROWS_AS(necessary_avg_weight(make_path(2), 1.0), error);

    // contrapositive: whatever the checker calls stable satisfies the bound
    splitmix64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng.next_below(5));
        weighted_graph g = testsupport::random_connected_graph(rng, n, 0.5, 0.5, 3.0);
        double tr = 4.0 * rng.next_double();
        jacobian2 J{{0.5 * tr, -3, 3, 0.5 * tr}};
        stability_verdict v = network_stability_check(g, local_dynamics::uniform(J, n));
        if (v.stable) CHECK(necessary_avg_weight(g, v.tau));
    }
}

TEST_CASE("single-edge removal verdicts") {
    weighted_graph k4 = make_complete(4);
    for (int id = 0; id < k4.edge_count(); ++id) {
        const edge& e = k4.edge_at(id);
        single_removal_result r = safe_single_edge_removal(k4, e.u, e.v, 2.0);
        CHECK(r.outcome == removal_outcome::safe);
        CHECK(r.lambda == doctest::Approx(4.0));
        CHECK(r.limit == doctest::Approx(1.0));

        CHECK(safe_single_edge_removal(k4, e.u, e.v, 2.01).outcome == removal_outcome::unsafe);
    }

    // tau = 2.5: limit (4 - 2.5)/2 = 0.75 < 1, and the deleted graph indeed
    // lands at lambda2 = 2 < 2.5
    single_removal_result tight = safe_single_edge_removal(k4, 0, 1, 2.5);
    CHECK(tight.outcome == removal_outcome::unsafe);
    CHECK(tight.limit == doctest::Approx(0.75));
    CHECK(fiedler(k4.without_edge(k4.find_edge(0, 1))).value == doctest::Approx(2.0));

    // weighted example: L11 = 5 != L22 = 6, the diagonal screen rejects
    CHECK(safe_single_edge_removal(g56(), 0, 1, 1.0).outcome == removal_outcome::not_applicable);

    CHECK_THROWS_AS(safe_single_edge_removal(g56(), 0, 2, 1.0), error);
    CHECK_THROWS_AS(safe_single_edge_removal(make_path(2), 0, 1, 0.5), error); // n < 3
}

TEST_CASE("single-edge removal soundness against the eigensolver") {
    splitmix64 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + static_cast<int>(rng.next_below(6));
        double w = 0.25 + 2.0 * rng.next_double();
        weighted_graph g = make_complete(n, w);
        double t = (n * w) * rng.next_double();
        int id = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.edge_count())));
        const edge& e = g.edge_at(id);
        single_removal_result r = safe_single_edge_removal(g, e.u, e.v, t);
        REQUIRE(r.outcome != removal_outcome::not_applicable);
        double post = fiedler(g.without_edge(id)).value;
        if (r.outcome == removal_outcome::safe) CHECK(post >= t - 1e-9);
    }
}

TEST_CASE("joint removal of r edges") {
    weighted_graph k4 = make_complete(4);

    rank_r_removal_result matching = safe_rank_r_removal(k4, {{0, 1}, {2, 3}}, 2.0);
    CHECK(matching.outcome == removal_outcome::safe);
    CHECK(matching.nonadjacent_case);
    CHECK(matching.min_upsilon == doctest::Approx(2.0));
    // eigensolver confirms: K4 minus a perfect matching is C4, lambda2 = 2
    weighted_graph c4 = k4.without_edge(k4.find_edge(0, 1));
    c4 = c4.without_edge(c4.find_edge(2, 3));
    CHECK(fiedler(c4).value == doctest::Approx(2.0));

    // adjacent pair: upsilon from the 2x2 matrix must match the recomputed graph
    rank_r_removal_result adj = safe_rank_r_removal(k4, {{0, 1}, {0, 2}}, 2.0);
    CHECK_FALSE(adj.nonadjacent_case);
    CHECK(adj.outcome == removal_outcome::unsafe);
    CHECK(adj.min_upsilon == doctest::Approx(1.0));
    CHECK(adj.upsilon.back() == doctest::Approx(3.0));
    weighted_graph star_ish = k4.without_edge(k4.find_edge(0, 1));
    star_ish = star_ish.without_edge(star_ish.find_edge(0, 2));
    CHECK(fiedler(star_ish).value == doctest::Approx(1.0));

    // empty request: vacuous Safe iff lambda2 >= tau
    CHECK(safe_rank_r_removal(k4, {}, 3.9).outcome == removal_outcome::safe);
    CHECK(safe_rank_r_removal(k4, {}, 4.1).outcome == removal_outcome::unsafe);

    CHECK_THROWS_AS(safe_rank_r_removal(k4, {{0, 1}, {1, 0}}, 1.0), error);   // duplicate
    CHECK_THROWS_AS(safe_rank_r_removal(g56(), {{0, 2}}, 1.0), error);        // no such edge
    CHECK(safe_rank_r_removal(g56(), {{0, 1}}, 1.0).outcome == removal_outcome::not_applicable);
}

TEST_CASE("non-adjacent joint removal matches the spectrum multiset") {
    splitmix64 rng(88);
    for (int n : {4, 6, 8}) {
        double w = 0.5 + rng.next_double();
        weighted_graph g = make_complete(n, w);
        auto before = eigen_sym(g.laplacian()).values;
        for (int r = 1; r <= n / 2; ++r) {
            std::vector<std::pair<int, int>> pairs;
            weighted_graph cut = g;
            for (int k = 0; k < r; ++k) {
                pairs.emplace_back(2 * k, 2 * k + 1);
                cut = cut.without_edge(cut.find_edge(2 * k, 2 * k + 1));
            }
            rank_r_removal_result res = safe_rank_r_removal(g, pairs, 0.0);
            REQUIRE(res.nonadjacent_case);

            std::vector<double> expected = before;
            // each deleted eigenpair lambda -> lambda - 2w; remove r copies of
            // lambda = n*w and add the shifted values
            double lam = n * w;
            int shifted = 0;
            for (auto& v : expected)
                if (shifted < r && std::abs(v - lam) < 1e-9) {
                    v = lam - 2.0 * w;
                    ++shifted;
                }
            REQUIRE(shifted == r);
            std::sort(expected.begin(), expected.end());
            auto after = eigen_sym(cut.laplacian()).values;
            for (std::size_t j = 0; j < after.size(); ++j) CHECK(after[j] == doctest::Approx(expected[j]).epsilon(1e-9));
        }
    }
}

TEST_CASE("merris edge principle") {
    // K4 minus e(2,3) (0-based (1,2)); Fiedler pair (2, (0,-1,1,0))
    weighted_graph k4_minus = make_complete(4).without_edge(make_complete(4).find_edge(1, 2));
    eigpair pair{2.0, {0, -1, 1, 0}};
    std::vector<int> removable = merris_edge_principle(k4_minus, pair);
    REQUIRE(removable.size() == 1);
    const edge& e = k4_minus.edge_at(removable[0]);
    CHECK(((e.u == 0 && e.v == 3) || (e.u == 3 && e.v == 0))); // e(1,4) in 1-based labels
    // removing it leaves lambda2 = 2 (the C4 spectrum)
    CHECK(fiedler(k4_minus.without_edge(removable[0])).value == doctest::Approx(2.0));

    // K4 with eigenvector eps_1 - eps_2: edge (3,4) has equal (zero) entries
    weighted_graph k4 = make_complete(4);
    std::vector<int> zeros = merris_edge_principle(k4, eigpair{4.0, {1, -1, 0, 0}});
    REQUIRE(zeros.size() == 1);
    CHECK(k4.edge_at(zeros[0]).u == 2);
    CHECK(k4.edge_at(zeros[0]).v == 3);

    // all-distinct eigenvector components: nothing to remove
    weighted_graph p3 = make_path(3);
    fiedler_result f = fiedler(p3);
    CHECK(merris_edge_principle(p3, eigpair{f.value, f.vector}).empty());

    CHECK_THROWS_AS(merris_edge_principle(k4, eigpair{4.0, {1, 1, 1, 1}}), error);
    CHECK_THROWS_AS(merris_edge_principle(k4, eigpair{4.0, {0, 0, 0, 0}}), error);
}

TEST_CASE("merris alternating principle") {
    weighted_graph k4 = make_complete(4);
    alternating_result alt = merris_alternating_principle(k4, eigpair{4.0, {0, -1, 1, 0}});
    REQUIRE(alt.edges.size() == 1);
    CHECK(k4.edge_at(alt.edges[0]).u == 1);
    CHECK(k4.edge_at(alt.edges[0]).v == 2);
    CHECK(alt.new_lambda == doctest::Approx(2.0));
    CHECK(alt.verified);
    CHECK_FALSE(alt.extrapolated);

    // no sign-opposed adjacent pair: empty list, lambda unchanged
    weighted_graph p3 = make_path(3);
    fiedler_result f = fiedler(p3); // vector ~ (a, 0, -a): the adjacent pairs are (0,1), (1,2)
    alternating_result none = merris_alternating_principle(p3, eigpair{f.value, f.vector});
    CHECK(none.edges.empty());
    CHECK(none.new_lambda == doctest::Approx(f.value));

    // C4 with (1,-1,1,-1), lambda = 4: all edges alternate, but the predicted
    // lambda - 2 = 2 is not an eigenvalue of the edgeless graph
    weighted_graph c4 = make_cycle(4);
    alternating_result all = merris_alternating_principle(c4, eigpair{4.0, {1, -1, 1, -1}});
    CHECK(all.edges.size() == 4);
    CHECK(all.new_lambda == doctest::Approx(2.0));
    CHECK_FALSE(all.verified);
}
