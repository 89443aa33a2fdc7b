#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// Drives the installed binary end to end: exit codes, human output, --json
// documents validated against the shipped schema.

using nlohmann::json;

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/ecocut_cli_XXXXXX";
        return std::string(mkdtemp(tmpl));
    }();
    return dir.c_str();
}

run_result run_cli(const std::string& args) {
    std::string out_path = std::string(scratch_dir()) + "/out.txt";
    std::string err_path = std::string(scratch_dir()) + "/err.txt";
    std::string cmd = std::string(ECOCUT_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    int status = std::system(cmd.c_str());
    run_result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string write_file(const std::string& name, const std::string& content) {
    std::string path = std::string(scratch_dir()) + "/" + name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

const char* kG56 = R"({
  "n": 5,
  "edges": [
    {"u": 0, "v": 1, "w": 3}, {"u": 1, "v": 2, "w": 2}, {"u": 2, "v": 3, "w": 3},
    {"u": 3, "v": 4, "w": 5}, {"u": 4, "v": 0, "w": 2}, {"u": 4, "v": 1, "w": 1}
  ],
  "dynamics": {"jacobian": [[3, -5], [5, 3]]}
})";

// ---- subset JSON-Schema validator (type/required/properties/items/enum,
// $ref into $defs, oneOf), enough for the shipped schema --------------------
class mini_validator {
public:
    explicit mini_validator(const json& schema) : root_(schema) {}

    bool validate(const json& value, const json& spec, std::string* why) const {
        if (spec.contains("$ref")) {
            const std::string ref = spec["$ref"].get<std::string>();
            const std::string prefix = "#/$defs/";
            REQUIRE(ref.rfind(prefix, 0) == 0);
            return validate(value, root_["$defs"][ref.substr(prefix.size())], why);
        }
        if (spec.contains("oneOf")) {
            for (const json& option : spec["oneOf"]) {
                std::string ignored;
                if (validate(value, option, &ignored)) return true;
            }
            *why = "no oneOf branch matched";
            return false;
        }
        if (spec.contains("enum")) {
            for (const json& allowed : spec["enum"])
                if (value == allowed) return true;
            *why = "value not in enum: " + value.dump();
            return false;
        }
        if (spec.contains("type") && !type_ok(value, spec["type"])) {
            *why = "type mismatch: " + value.dump().substr(0, 60) + " vs " + spec["type"].dump();
            return false;
        }
        if (value.is_object()) {
            if (spec.contains("required"))
                for (const json& key : spec["required"])
                    if (!value.contains(key.get<std::string>())) {
                        *why = "missing required field '" + key.get<std::string>() + "'";
                        return false;
                    }
            if (spec.contains("properties"))
                for (auto& [key, sub] : spec["properties"].items())
                    if (value.contains(key) && !validate(value[key], sub, why)) {
                        *why = "." + key + ": " + *why;
                        return false;
                    }
        }
        if (value.is_array() && spec.contains("items")) {
            for (const json& item : value)
                if (!validate(item, spec["items"], why)) {
                    *why = "[]: " + *why;
                    return false;
                }
        }
        return true;
    }

    void expect(const std::string& text, const std::string& def) const {
        json value = json::parse(text);
        std::string why;
        bool ok = validate(value, root_["$defs"][def], &why);
        INFO("schema $defs/" << def << ": " << why);
        CHECK(ok);
    }

private:
    static bool type_ok(const json& v, const json& type) {
        if (type.is_array()) {
            for (const json& t : type)
                if (type_ok(v, t)) return true;
            return false;
        }
        const std::string t = type.get<std::string>();
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
        if (t == "number") return v.is_number();
        if (t == "null") return v.is_null();
        return false;
    }

    json root_;
};

const mini_validator& schema() {
    static mini_validator v{json::parse(slurp(ECOCUT_SCHEMA_PATH))};
    return v;
}

} // namespace

TEST_CASE("analyze: stable network, lambda2 on stdout") {
    std::string path = write_file("g56.json", kG56);
    run_result r = run_cli("analyze " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("3.625") != std::string::npos);
    CHECK(r.out.find("stable") != std::string::npos);

    run_result j = run_cli("analyze " + path + " --json");
    schema().expect(j.out, "analyze");
}

TEST_CASE("analyze: disconnected file exits 2 with lambda2 = 0") {
    std::string path = write_file("split.json",
                                  R"({"n": 4, "edges": [{"u":0,"v":1,"w":0.5},{"u":2,"v":3,"w":0.5}],
                                      "dynamics": {"jacobian": [[3,-5],[5,3]]}})");
    run_result r = run_cli("analyze " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("lambda2:        0") != std::string::npos);
    CHECK(r.out.find("connected:      no") != std::string::npos);
}

TEST_CASE("exhaustive: the worked example's best cut on top") {
    std::string path = write_file("g56.json", kG56);
    run_result r = run_cli("exhaustive " + path + " --objective max_weight");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1. cut 010100  weight 7") != std::string::npos);
    CHECK(r.out.find("e2(1-2, w=2), e4(3-4, w=5)") != std::string::npos);

    run_result j = run_cli("exhaustive " + path + " --json");
    schema().expect(j.out, "exhaustive");

    // unstable threshold: nothing admissible, exit 2
    run_result hard = run_cli("exhaustive " + path + " --tau 50");
    CHECK(hard.exit_code == 2);
}

TEST_CASE("bisect: reproducible output and baseline row") {
    std::string path = write_file("g56.json", kG56);
    std::string args = "bisect " + path + " --trials 25 --seed 11 --baseline spectral";
    run_result a = run_cli(args);
    run_result b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out); // identical (file, flags, seed) -> identical stdout
    CHECK(a.out.find("spectral baseline theta:") != std::string::npos);

    run_result j = run_cli("bisect " + path + " --trials 25 --seed 11 --baseline spectral --json");
    schema().expect(j.out, "bisect");
}

TEST_CASE("edge-check on K4") {
    std::string k4 = "0 1 1\n0 2 1\n0 3 1\n1 2 1\n1 3 1\n2 3 1\n";
    std::string path = write_file("k4.txt", k4);
    run_result r = run_cli("edge-check " + path + " --edges 0-1,2-3 --tau 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("edge 0-1: safe") != std::string::npos);
    CHECK(r.out.find("[non-adjacent case]") != std::string::npos);

    run_result j = run_cli("edge-check " + path + " --edges 0-1,2-3 --tau 2 --json");
    schema().expect(j.out, "edge_check");
}

TEST_CASE("simulate writes a CSV and reports convergence") {
    std::string path = write_file("g56.json", kG56);
    std::string csv = std::string(scratch_dir()) + "/traj.csv";
    run_result r = run_cli("simulate " + path + " --t 8 --dt 1e-3 --perturb 1e-3 --stride 100 --out " + csv);
    CHECK(r.exit_code == 0);
    std::string data = slurp(csv);
    CHECK(data.rfind("t,x_0,x_1,x_2,x_3,x_4,y_0,y_1,y_2,y_3,y_4", 0) == 0);

    run_result j = run_cli("simulate " + path + " --t 8 --stride 100 --json");
    schema().expect(j.out, "simulate");
}

TEST_CASE("generate emits a valid document that analyze accepts") {
    std::string out = std::string(scratch_dir()) + "/er.json";
    run_result g = run_cli("generate --er 12,0.5 --weights 1,20,int --seed 5 --require-connected --tau 0.5 --out " + out);
    CHECK(g.exit_code == 0);
    schema().expect(slurp(out), "network");

    run_result a = run_cli("analyze " + out);
    CHECK((a.exit_code == 0 || a.exit_code == 2)); // verdict depends on the draw
    run_result again = run_cli("generate --er 12,0.5 --weights 1,20,int --seed 5 --require-connected --tau 0.5");
    CHECK(slurp(out) == again.out); // --out vs stdout, same bytes

    run_result dot = run_cli("generate --er 4,1.0 --seed 1 --dot");
    CHECK(dot.out.rfind("graph habitat", 0) == 0);
}

TEST_CASE("exhaustive honors --threads and --min-component-size") {
    std::string path = write_file("g56.json", kG56);
    run_result r = run_cli("exhaustive " + path + " --threads 3 --min-component-size 1 --json");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["survivors"] == 15); // nothing filtered
    CHECK(doc["admissible_count"] == 2);

    run_result base = run_cli("exhaustive " + path + " --json");
    run_result threaded = run_cli("exhaustive " + path + " --threads 4 --json");
    CHECK(base.out == threaded.out);
}

TEST_CASE("usage errors exit 64, tool errors exit 1") {
    CHECK(run_cli("analyze").exit_code == 64);           // missing file argument
    CHECK(run_cli("frobnicate x").exit_code == 64);      // unknown subcommand
    CHECK(run_cli("analyze missing.json").exit_code == 1);
    std::string bad = write_file("bad.json", "{ nope");
    run_result r = run_cli("analyze " + bad);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("ecocut:") != std::string::npos);

    std::string nodyn = write_file("plain.txt", "0 1 2.0\n");
    CHECK(run_cli("analyze " + nodyn).exit_code == 1);             // no dynamics anywhere
    CHECK(run_cli("analyze " + nodyn + " --tau 1").exit_code == 0); // rescued by the flag
}
