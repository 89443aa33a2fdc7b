// ecocut CLI: thin shell over the C API (include/ecocut.h). Human-readable
// summaries are rendered from the same JSON documents --json emits, so the
// two views can never disagree.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecocut.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2; // analysis ran fine, verdict is "no"
constexpr int kExitUsage = 64;

struct network_deleter {
    void operator()(ecocut_network* p) const { ecocut_network_free(p); }
};
using network_ptr = std::unique_ptr<ecocut_network, network_deleter>;

struct string_deleter {
    void operator()(char* p) const { ecocut_string_free(p); }
};
using api_string = std::unique_ptr<char, string_deleter>;

[[noreturn]] void die(const std::string& message, int code = kExitError) {
    std::cerr << "ecocut: " << message << "\n";
    std::exit(code);
}

void check(ecocut_status st) {
    if (st != ECOCUT_OK) die(ecocut_last_error());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct dynamics_flags {
    double tau = 0.0;
    bool has_tau = false;
    std::string jacobian; // "a,b,c,d"
};

void add_dynamics_flags(CLI::App* cmd, dynamics_flags& f) {
    cmd->add_option("--tau", f.tau, "stability threshold override (tau = max tr(J)/2)")
        ->check(CLI::Number)
        ->each([&](const std::string&) { f.has_tau = true; });
    cmd->add_option("--jacobian", f.jacobian, "uniform patch Jacobian a,b,c,d (row-major 2x2)");
}

network_ptr load_network(const std::string& path, const dynamics_flags& dyn) {
    std::string text = read_file(path);
    ecocut_network* raw = nullptr;
    check(ecocut_network_parse(text.c_str(), &raw));
    network_ptr net(raw);
    if (!dyn.jacobian.empty()) {
        double j[4];
        if (std::sscanf(dyn.jacobian.c_str(), "%lf,%lf,%lf,%lf", &j[0], &j[1], &j[2], &j[3]) != 4)
            die("--jacobian expects four comma-separated numbers", kExitUsage);
        check(ecocut_network_set_uniform_jacobian(net.get(), j));
    }
    if (dyn.has_tau) check(ecocut_network_set_tau(net.get(), dyn.tau));
    return net;
}

json parse_report(const api_string& s) { return json::parse(std::string(s.get())); }

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string edge_list_string(const json& edges) {
    std::string out;
    for (const auto& e : edges) {
        if (!out.empty()) out += ", ";
        out += "e" + std::to_string(e["id"].get<int>() + 1) + "(" + std::to_string(e["u"].get<int>()) + "-" +
               std::to_string(e["v"].get<int>()) + ", w=" + fmt(e["w"].get<double>()) + ")";
    }
    return out.empty() ? "(none)" : out;
}

int cmd_analyze(const std::string& path, const dynamics_flags& dyn, bool as_json) {
    network_ptr net = load_network(path, dyn);
    char* raw = nullptr;
    check(ecocut_analyze_json(net.get(), &raw));
    api_string out(raw);
    if (as_json) {
        std::cout << out.get();
    } else {
        json r = parse_report(out);
        std::cout << "patches (n):    " << r["n"].get<int>() << "\n"
                  << "corridors (m):  " << r["m"].get<int>() << "\n"
                  << "connected:      " << yesno(r["connected"].get<bool>()) << "\n"
                  << "lambda2:        " << fmt(r["lambda2"].get<double>()) << "\n"
                  << "tau:            " << fmt(r["tau"].get<double>()) << "\n"
                  << "condition 1 (patch discriminants <= 0): " << yesno(r["condition1_ok"].get<bool>()) << "\n"
                  << "condition 2 (lambda2 >= tau):           " << yesno(r["condition2_ok"].get<bool>()) << "\n";
        if (!r["failing_patches"].empty()) {
            std::cout << "failing patches:";
            for (const auto& p : r["failing_patches"]) std::cout << " " << p.get<int>();
            std::cout << "\n";
        }
        if (!r["bounds"].is_null()) {
            const json& b = r["bounds"];
            std::cout << "lambda2 bounds (" << (b["unweighted_exact"].get<bool>() ? "exact, unit weights" : "advisory, weighted")
                      << "):\n";
            for (const char* side : {"lower", "upper"})
                for (const auto& e : b[side]) {
                    std::cout << "  " << side << "  " << e["name"].get<std::string>() << " = ";
                    if (e["applicable"].get<bool>()) std::cout << fmt(e["value"].get<double>());
                    else std::cout << "n/a";
                    std::cout << "\n";
                }
        }
        const json& t3 = r["necessary_condition"];
        if (t3["applicable"].get<bool>())
            std::cout << "necessary avg-weight condition: " << (t3["ok"].get<bool>() ? "holds" : "VIOLATED")
                      << " (avg degree " << fmt(t3["avg_degree"].get<double>()) << " vs "
                      << fmt(t3["threshold"].get<double>()) << ")\n";
        std::cout << "verdict:        " << (r["stable"].get<bool>() ? "stable" : "unstable")
                  << (r["marginal"].get<bool>() ? " (marginal: lambda2 == tau)" : "") << "\n";
    }
    json r = parse_report(out);
    return r["stable"].get<bool>() ? kExitOk : kExitNegative;
}

int cmd_exhaustive(const std::string& path, const dynamics_flags& dyn, const std::string& objective,
                   int min_component, int threads, bool as_json) {
    network_ptr net = load_network(path, dyn);
    char* raw = nullptr;
    check(ecocut_exhaustive_json(net.get(), objective.c_str(), min_component, threads, &raw));
    api_string out(raw);
    json r = parse_report(out);
    if (as_json) {
        std::cout << out.get();
    } else {
        std::cout << "enumerated cut-set vectors: " << r["enumerated"].get<std::uint64_t>() << "\n"
                  << "survivors (no isolated patch): " << r["survivors"].get<int>() << "\n"
                  << "admissible (all components stable): " << r["admissible_count"].get<int>() << "\n";
        int rank = 1;
        for (const auto& idx : r["ranked"]) {
            const json& c = r["cutsets"][idx.get<std::size_t>()];
            std::cout << rank++ << ". cut " << c["bits"].get<std::string>() << "  weight "
                      << fmt(c["weight"].get<double>()) << "  edges: " << edge_list_string(c["edges"]) << "\n";
            for (const auto& comp : c["components"]) {
                std::cout << "   component {";
                bool first = true;
                for (const auto& v : comp["nodes"]) {
                    if (!first) std::cout << ",";
                    std::cout << v.get<int>();
                    first = false;
                }
                std::cout << "}  lambda2 = " << fmt(comp["lambda2"].get<double>()) << "\n";
            }
        }
    }
    return r["admissible_count"].get<int>() > 0 ? kExitOk : kExitNegative;
}

int cmd_bisect(const std::string& path, const dynamics_flags& dyn, int trials, std::uint64_t seed,
               const std::string& baseline, int threads, bool as_json) {
    network_ptr net = load_network(path, dyn);
    char* raw = nullptr;
    check(ecocut_bisect_json(net.get(), trials, seed, threads, baseline == "spectral", &raw));
    api_string out(raw);
    json r = parse_report(out);
    if (as_json) {
        std::cout << out.get();
    } else {
        std::cout << "trials: " << trials << "  seed: " << seed << "  tau: " << fmt(r["tau"].get<double>()) << "\n";
        if (r["feasible"].get<bool>()) {
            const json& b = r["best"];
            std::cout << "best theta: " << fmt(b["theta"].get<double>()) << " (trial " << b["trial"].get<int>()
                      << ", k = " << b["k"].get<int>() << ")\n"
                      << "component lambda2: " << fmt(b["lambda2"][0].get<double>()) << ", "
                      << fmt(b["lambda2"][1].get<double>()) << "\n"
                      << "cut weight: " << fmt(b["cut_weight"].get<double>()) << "\n";
            for (int s = 0; s < 2; ++s) {
                std::cout << "side " << s + 1 << ": {";
                bool first = true;
                for (const auto& v : b["sides"][s]) {
                    if (!first) std::cout << ",";
                    std::cout << v.get<int>();
                    first = false;
                }
                std::cout << "}\n";
            }
        } else {
            std::cout << "no feasible bisection found (NoFeasibleK): no swap prefix of any start reached tau\n";
        }
        if (r.contains("baseline")) {
            const json& b = r["baseline"];
            std::cout << "spectral baseline theta: " << fmt(b["theta"].get<double>()) << "  (lambda2 "
                      << fmt(b["lambda2"][0].get<double>()) << ", " << fmt(b["lambda2"][1].get<double>()) << ")\n";
        }
    }
    return r["feasible"].get<bool>() ? kExitOk : kExitNegative;
}

int cmd_edge_check(const std::string& path, const dynamics_flags& dyn, const std::string& edges_arg,
                   bool as_json) {
    network_ptr net = load_network(path, dyn);
    std::vector<int32_t> us, vs;
    std::stringstream ss(edges_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int u, v;
        if (std::sscanf(item.c_str(), "%d-%d", &u, &v) != 2)
            die("--edges expects 'u-v,u-v,...'", kExitUsage);
        us.push_back(u);
        vs.push_back(v);
    }
    char* raw = nullptr;
    check(ecocut_edge_check_json(net.get(), us.data(), vs.data(), static_cast<int32_t>(us.size()), &raw));
    api_string out(raw);
    if (as_json) {
        std::cout << out.get();
        return kExitOk;
    }
    json r = parse_report(out);
    std::cout << "tau: " << fmt(r["tau"].get<double>()) << "\n";
    for (const auto& e : r["single_removal"]) {
        std::cout << "edge " << e["u"].get<int>() << "-" << e["v"].get<int>() << ": "
                  << e["outcome"].get<std::string>();
        if (e.contains("lambda"))
            std::cout << "  (lambda = " << fmt(e["lambda"].get<double>())
                      << ", weight limit = " << fmt(e["limit"].get<double>()) << ")";
        std::cout << "  post-deletion lambda2 = " << fmt(e["post_lambda2"].get<double>()) << "\n";
    }
    const json& t5 = r["joint_removal"];
    std::cout << "simultaneous removal: " << t5["outcome"].get<std::string>();
    if (t5.contains("min_upsilon")) std::cout << "  (min upsilon = " << fmt(t5["min_upsilon"].get<double>()) << ")";
    std::cout << (t5["nonadjacent"].get<bool>() ? "  [non-adjacent case]" : "") << "\n";
    if (r["merris"].contains("lambda2")) {
        const json& m = r["merris"];
        std::cout << "Fiedler pair lambda2 = " << fmt(m["lambda2"].get<double>()) << "\n"
                  << "edge principle (removable, lambda2 unchanged): " << edge_list_string(m["edge_principle"])
                  << "\n";
        const json& alt = m["alternating"];
        std::cout << "alternating principle pairs: " << edge_list_string(alt["edges"]);
        if (!alt["edges"].empty())
            std::cout << "  -> new lambda = " << fmt(alt["new_lambda"].get<double>())
                      << (alt["verified"].get<bool>() ? " (verified)" : " (NOT verified on modified graph)");
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& path, const dynamics_flags& dyn, double t_end, double dt, double perturb,
                 int stride, const std::string& out_path, bool as_json) {
    network_ptr net = load_network(path, dyn);
    char* csv_raw = nullptr;
    char* sum_raw = nullptr;
    check(ecocut_simulate(net.get(), t_end, dt, perturb, stride, out_path.empty() ? nullptr : &csv_raw, &sum_raw));
    api_string csv(csv_raw), summary(sum_raw);
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) die("cannot write '" + out_path + "'");
        f << csv.get();
    }
    json r = parse_report(summary);
    if (as_json) {
        std::cout << summary.get();
    } else {
        std::cout << "steps: " << r["steps"].get<int>() << " (dt = " << fmt(r["dt"].get<double>()) << ")\n"
                  << "initial deviation: " << fmt(r["initial_deviation"].get<double>()) << "\n"
                  << "min deviation:     " << fmt(r["min_deviation"].get<double>()) << " at t = "
                  << fmt(r["min_deviation_time"].get<double>()) << "\n"
                  << "final deviation:   " << fmt(r["final_deviation"].get<double>()) << "\n"
                  << "diverged:          " << yesno(r["diverged"].get<bool>()) << "\n"
                  << "converged (10x shrink of the transverse perturbation): "
                  << yesno(r["converged"].get<bool>()) << "\n";
        if (!out_path.empty()) std::cout << "trajectory written to " << out_path << "\n";
    }
    return r["converged"].get<bool>() ? kExitOk : kExitNegative;
}

int cmd_generate(const std::string& er, const std::string& weights, std::uint64_t seed, bool require_connected,
                 const dynamics_flags& dyn, const std::string& out_path, bool dot) {
    int n = 0;
    double p = 0.0;
    if (std::sscanf(er.c_str(), "%d,%lf", &n, &p) != 2) die("--er expects 'n,p'", kExitUsage);
    double wmin = 1.0, wmax = 1.0;
    int integer_mode = 0;
    if (!weights.empty()) {
        char tail[8] = {0};
        int got = std::sscanf(weights.c_str(), "%lf,%lf,%3s", &wmin, &wmax, tail);
        if (got < 2) die("--weights expects 'wmin,wmax[,int]'", kExitUsage);
        if (got == 3) {
            if (std::string(tail) != "int") die("--weights tail must be 'int'", kExitUsage);
            integer_mode = 1;
        }
    }
    ecocut_network* raw = nullptr;
    check(ecocut_generate_er(n, p, wmin, wmax, integer_mode, seed, require_connected ? 1 : 0, &raw));
    network_ptr net(raw);
    if (!dyn.jacobian.empty()) {
        double j[4];
        if (std::sscanf(dyn.jacobian.c_str(), "%lf,%lf,%lf,%lf", &j[0], &j[1], &j[2], &j[3]) != 4)
            die("--jacobian expects four comma-separated numbers", kExitUsage);
        check(ecocut_network_set_uniform_jacobian(net.get(), j));
    }
    if (dyn.has_tau) check(ecocut_network_set_tau(net.get(), dyn.tau));

    char* text_raw = nullptr;
    check(dot ? ecocut_network_to_dot(net.get(), nullptr, &text_raw) : ecocut_network_to_json(net.get(), &text_raw));
    api_string text(text_raw);
    if (out_path.empty()) {
        std::cout << text.get();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) die("cannot write '" + out_path + "'");
        f << text.get();
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safe partitioning of diffusion-coupled habitat networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ecocut_version()));

    std::string path, objective = "max_weight", baseline, edges_arg, out_path, er_arg, weights_arg;
    dynamics_flags dyn;
    bool as_json = false, require_connected = false, dot = false;
    int threads = 0, min_component = 2, trials = 100, stride = 1;
    std::uint64_t seed = 1;
    double t_end = 50.0, dt = 1e-3, perturb = 1e-3;

    auto* analyze = app.add_subcommand("analyze", "n, m, lambda2, tau, stability conditions, bounds");
    analyze->add_option("file", path, "network document (JSON or edge list)")->required();
    add_dynamics_flags(analyze, dyn);
    analyze->add_flag("--json", as_json, "machine-readable output");

    auto* exhaustive = app.add_subcommand("exhaustive", "enumerate all cut-sets, keep the stable ones");
    exhaustive->add_option("file", path)->required();
    exhaustive->add_option("--objective", objective, "min_weight | max_weight | max_min_fiedler")
        ->check(CLI::IsMember({"min_weight", "max_weight", "max_min_fiedler"}));
    exhaustive->add_option("--min-component-size", min_component, "smallest acceptable component (default 2)");
    exhaustive->add_option("--threads", threads, "worker threads (0 = auto)");
    add_dynamics_flags(exhaustive, dyn);
    exhaustive->add_flag("--json", as_json);

    auto* bisect = app.add_subcommand("bisect", "multi-restart heuristic bisection");
    bisect->add_option("file", path)->required();
    bisect->add_option("--trials", trials, "random restarts (default 100)");
    bisect->add_option("--seed", seed, "PRNG seed");
    bisect->add_option("--baseline", baseline, "also report a baseline ('spectral')")
        ->check(CLI::IsMember({"spectral"}));
    bisect->add_option("--threads", threads, "worker threads (0 = auto)");
    add_dynamics_flags(bisect, dyn);
    bisect->add_flag("--json", as_json);

    auto* edge_check = app.add_subcommand("edge-check", "edge-removal safety + Merris candidates");
    edge_check->add_option("file", path)->required();
    edge_check->add_option("--edges", edges_arg, "edges as 'u-v,u-v,...'")->required();
    add_dynamics_flags(edge_check, dyn);
    edge_check->add_flag("--json", as_json);

    auto* simulate = app.add_subcommand("simulate", "RK4 integration from a perturbed equilibrium");
    simulate->add_option("file", path)->required();
    simulate->add_option("--t", t_end, "time horizon (default 50)");
    simulate->add_option("--dt", dt, "step size (default 1e-3)");
    simulate->add_option("--perturb", perturb, "perturbation amplitude (default 1e-3)");
    simulate->add_option("--stride", stride, "record every k-th step (default 1)");
    simulate->add_option("--out", out_path, "trajectory CSV path");
    add_dynamics_flags(simulate, dyn);
    simulate->add_flag("--json", as_json);

    auto* generate = app.add_subcommand("generate", "seeded Erdos-Renyi network document");
    generate->add_option("--er", er_arg, "'n,p'")->required();
    generate->add_option("--weights", weights_arg, "'wmin,wmax[,int]'");
    generate->add_option("--seed", seed, "PRNG seed");
    generate->add_flag("--require-connected", require_connected, "rejection-sample until connected");
    generate->add_flag("--dot", dot, "emit DOT instead of JSON");
    generate->add_option("--out", out_path, "write to file instead of stdout");
    add_dynamics_flags(generate, dyn);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(path, dyn, as_json);
        if (app.got_subcommand(exhaustive))
            return cmd_exhaustive(path, dyn, objective, min_component, threads, as_json);
        if (app.got_subcommand(bisect)) return cmd_bisect(path, dyn, trials, seed, baseline, threads, as_json);
        if (app.got_subcommand(edge_check)) return cmd_edge_check(path, dyn, edges_arg, as_json);
        if (app.got_subcommand(simulate))
            return cmd_simulate(path, dyn, t_end, dt, perturb, stride, out_path, as_json);
        if (app.got_subcommand(generate))
            return cmd_generate(er_arg, weights_arg, seed, require_connected, dyn, out_path, dot);
    } catch (const std::exception& e) {
        die(e.what());
    }
    return kExitUsage;
}
