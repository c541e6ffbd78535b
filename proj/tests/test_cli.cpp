#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef HYPERSURF_CLI_PATH
#error "HYPERSURF_CLI_PATH must be defined"
#endif

using json = nlohmann::json;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(HYPERSURF_CLI_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

// Recursively checks that every "required" key listed in the schema node
// is present in the document node.
void check_required(const json& schema, const json& doc, const json& root,
                    const std::string& where) {
    if (schema.contains("$ref")) {
        std::string ref = schema["$ref"].get<std::string>();
        // only supports local "#/definitions/..." refs
        const json* target = &root;
        std::stringstream ss(ref.substr(2));
        std::string part;
        while (std::getline(ss, part, '/')) target = &(*target)[part];
        check_required(*target, doc, root, where);
        return;
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
            std::string name = key.get<std::string>();
            INFO(where << "/" << name);
            REQUIRE(doc.contains(name));
        }
    }
    if (schema.contains("properties")) {
        for (const auto& [name, sub] : schema["properties"].items()) {
            if (doc.contains(name) && doc[name].is_object())
                check_required(sub, doc[name], root, where + "/" + name);
        }
    }
}

}  // namespace

TEST_CASE("analyze produces a schema-conforming report") {
    int code = run("analyze --expr \"(2*x+3*y)^1.5\" --vars x,y --out report1.json --csv points1.csv");
    REQUIRE(code == 0);

    json doc = load_json("report1.json");
    json schema = load_json(std::string(HYPERSURF_SOURCE_DIR) + "/docs/report_schema.json");
    check_required(schema, doc, schema, "");

    CHECK(doc["report"]["classification"]["verdict"] == "MultinomialPower");
    CHECK(doc["report"]["homogeneity"]["is_homogeneous"] == true);
    CHECK(doc["report"]["classification"]["binomial"] == true);

    // CSV: header + 9x9 lattice rows
    std::string csv = slurp("points1.csv");
    CHECK(line_count(csv) == 82);
    CHECK(csv.rfind("x,y,f,K,Rmax\n", 0) == 0);
}

TEST_CASE("analyze on a CES family with gamma = 1") {
    int code = run("analyze --family ces --params A=1,rho=0.5,gamma=1,c=1,1 "
                   "--vars x,y --out report_ces.json");
    REQUIRE(code == 0);
    json doc = load_json("report_ces.json");
    CHECK(doc["report"]["classification"]["verdict"] == "LinearlyHomogeneousFlat");
    CHECK(doc["report"]["homogeneity"]["returns_to_scale"] == "constant");
    CHECK(doc["report"]["classification"]["developable"] == true);
}

TEST_CASE("analyze on the counterexample family") {
    int code = run("analyze --family counterexample-r1 --params r=2 "
                   "--vars x,y,z --out report_cx.json");
    REQUIRE(code == 0);
    json doc = load_json("report_cx.json");
    CHECK(doc["report"]["classification"]["verdict"] == "NotFlat");
    CHECK(doc["report"]["classification"]["gk_zero_but_not_flat"] == true);
}

TEST_CASE("reports are deterministic for identical config") {
    REQUIRE(run("analyze --expr \"sqrt(x*y)\" --vars x,y --seed 3 --out det_a.json") == 0);
    REQUIRE(run("analyze --expr \"sqrt(x*y)\" --vars x,y --seed 3 --out det_b.json") == 0);
    json a = load_json("det_a.json");
    json b = load_json("det_b.json");
    // the deterministic section is byte-stable; runtime duration is not
    CHECK(a["report"].dump() == b["report"].dump());
    CHECK(a["report"]["config"]["seed"] == 3);
}

TEST_CASE("exit codes: 1 for parse/config errors, 2 for math errors") {
    CHECK(run("analyze --expr \"log(\" --vars x") == 1);
    CHECK(run("analyze --expr \"x+q\" --vars x") == 1);
    CHECK(run("analyze --expr \"x\" --vars x --domain 2:1") == 1);
    CHECK(run("analyze --vars x") == 1);
    CHECK(run("ode-check --r 2 --c -0.5 --urange 0.5:1.5") == 2);   // pole at u = 1
    CHECK(run("ushakov --g \"1+0*t\" --h t --trange 0:1 --srange 0:1") == 2);  // g' = 0
}

TEST_CASE("parse errors carry a position in the message") {
    CHECK(run("analyze --expr \"x + * y\" --vars x,y") == 1);
    std::string err = slurp("cli_stderr.txt");
    CHECK(err.find("position") != std::string::npos);
}

TEST_CASE("ushakov mesh export") {
    int code = run("ushakov --g \"t^2\" --h \"t^3\" --trange 0.5:1.5 --srange 0:1 "
                   "--resolution 2 --out mesh.csv");
    REQUIRE(code == 0);
    std::string csv = slurp("mesh.csv");
    CHECK(line_count(csv) == 5);  // header + 2x2
    CHECK(csv.rfind("t,s,x,y,z,K\n", 0) == 0);

    json summary = json::parse(slurp("cli_stdout.txt"));
    CHECK(summary["max_abs_K"].get<double>() < 1e-8);
}

TEST_CASE("ode-check summary and table") {
    int code = run("ode-check --r 1.5 --c 0.7 --urange 0.1:2 --out ode.csv");
    REQUIRE(code == 0);
    json summary = json::parse(slurp("cli_stdout.txt"));
    CHECK(summary["max_error"].get<double>() < 1e-7);
    std::string csv = slurp("ode.csv");
    CHECK(csv.rfind("u,w_numeric,w_closed,error\n", 0) == 0);
    CHECK(line_count(csv) == 258);
}

TEST_CASE("families catalog command") {
    REQUIRE(run("families") == 0);
    json catalog = json::parse(slurp("cli_stdout.txt"));
    REQUIRE(catalog.is_array());
    CHECK(catalog.size() == 5);
    for (const auto& entry : catalog) CHECK(entry.contains("citation"));
}
