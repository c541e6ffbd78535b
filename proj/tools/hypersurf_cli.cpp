#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypersurf/classify.hpp"
#include "hypersurf/families.hpp"
#include "hypersurf/geometry.hpp"
#include "hypersurf/grid.hpp"
#include "hypersurf/homogeneity.hpp"

using json = nlohmann::ordered_json;
using namespace hypersurf;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse " + what + ": \"" + s + "\"");
    }
}

std::pair<double, double> parse_range(const std::string& s, const std::string& what) {
    auto parts = split(s, ':');
    if (parts.size() != 2)
        throw InvalidArgument(what + " must look like min:max, got \"" + s + "\"");
    double lo = parse_double(parts[0], what);
    double hi = parse_double(parts[1], what);
    if (!(lo < hi)) throw InvalidArgument(what + " requires min < max");
    return {lo, hi};
}

DomainBox parse_domain(const std::string& spec, std::size_t arity) {
    DomainBox box = DomainBox::uniform(arity);
    if (spec.empty()) return box;
    auto axes = split(spec, ',');
    if (axes.size() == 1) {
        auto [lo, hi] = parse_range(axes[0], "--domain");
        box = DomainBox::uniform(arity, lo, hi);
    } else if (axes.size() == arity) {
        for (std::size_t i = 0; i < arity; ++i) {
            auto [lo, hi] = parse_range(axes[i], "--domain");
            box.lower[i] = lo;
            box.upper[i] = hi;
        }
    } else {
        throw InvalidArgument("--domain needs one range or one per variable");
    }
    box.validate();
    return box;
}

// --params A=1,rho=0.5,c=1,2,3 : bare values continue the previous key's list.
std::map<std::string, std::vector<double>> parse_params(const std::string& spec) {
    std::map<std::string, std::vector<double>> params;
    if (spec.empty()) return params;
    std::string current;
    for (const auto& chunk : split(spec, ',')) {
        auto eq = chunk.find('=');
        if (eq != std::string::npos) {
            current = chunk.substr(0, eq);
            params[current].push_back(parse_double(chunk.substr(eq + 1), "--params " + current));
        } else {
            if (current.empty())
                throw InvalidArgument("--params value without a key: \"" + chunk + "\"");
            params[current].push_back(parse_double(chunk, "--params " + current));
        }
    }
    return params;
}

FamilySpec family_spec_from_params(FamilyTag tag,
                                   const std::map<std::string, std::vector<double>>& params,
                                   std::size_t arity) {
    FamilySpec spec;
    spec.tag = tag;
    for (const auto& [key, values] : params) {
        if (key == "A") spec.scale = values.back();
        else if (key == "rho") spec.rho = values.back();
        else if (key == "gamma") spec.gamma = values.back();
        else if (key == "r") spec.exponent = values.back();
        else if (key == "c") spec.coefficients = values;
        else throw InvalidArgument("unknown family parameter: " + key);
    }
    if (spec.coefficients.empty() && tag != FamilyTag::CounterexampleR1)
        spec.coefficients.assign(arity, 1.0);
    return spec;
}

json stats_json(const std::vector<double>& values) {
    double lo = values.front(), hi = values.front(), sum = 0.0;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    return {{"min", lo}, {"max", hi}, {"mean", sum / static_cast<double>(values.size())}};
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot open output file: " + path);
    out << content;
}

struct AnalyzeArgs {
    std::string expr;
    std::string family;
    std::string params;
    std::string vars;
    std::string domain;
    std::size_t grid_resolution = 9;
    double tol_flat = kFlatTolerance;
    double tol_degree = kDegreeTolerance;
    std::string convention = "paper";
    std::string out;
    std::string csv;
    std::uint64_t seed = 0;
};

int run_analyze(const AnalyzeArgs& args) {
    auto t0 = std::chrono::steady_clock::now();

    std::vector<std::string> variables = split(args.vars, ',');
    if (variables.empty()) throw InvalidArgument("--vars requires at least one name");

    json config;
    Expression expr = [&]() -> Expression {
        if (!args.expr.empty() && !args.family.empty())
            throw InvalidArgument("--expr and --family are mutually exclusive");
        if (!args.expr.empty()) {
            config["expression"] = args.expr;
            return parse(args.expr, variables);
        }
        if (!args.family.empty()) {
            FamilyTag tag = family_tag_from_name(args.family);
            FamilySpec spec = family_spec_from_params(tag, parse_params(args.params),
                                                      variables.size());
            BuiltFamily built = build(spec, variables);
            config["family"] = {{"name", to_string(tag)},
                                {"A", spec.scale},
                                {"c", spec.coefficients},
                                {"rho", spec.rho},
                                {"gamma", spec.gamma},
                                {"r", spec.exponent},
                                {"expression", built.ast.to_string()},
                                {"known_degree", built.degree},
                                {"binomial", built.binomial}};
            return built.ast;
        }
        throw InvalidArgument("one of --expr or --family is required");
    }();

    DomainBox box = parse_domain(args.domain, expr.arity());
    Convention convention;
    if (args.convention == "paper") convention = Convention::Paper;
    else if (args.convention == "gauss") convention = Convention::Gauss;
    else throw InvalidArgument("--convention must be paper or gauss");

    config["variables"] = variables;
    config["domain"] = json::array();
    for (std::size_t i = 0; i < box.arity(); ++i)
        config["domain"].push_back({{"min", box.lower[i]}, {"max", box.upper[i]}});
    config["grid_resolution"] = args.grid_resolution;
    config["tolerances"] = {{"flat", args.tol_flat}, {"degree", args.tol_degree}};
    config["convention"] = args.convention;
    config["seed"] = args.seed;

    // Scattered quasi-random points for degree estimation, a regular
    // lattice for the curvature sweep.
    auto homogeneity_grid = halton_grid(box, 10, args.seed);
    auto lattice = lattice_grid(box, args.grid_resolution);

    HomogeneityReport homogeneity = estimate_degree(expr, homogeneity_grid, args.tol_degree);
    EconomicDiagnostics economics = economic_diagnostics(expr, homogeneity_grid);

    std::vector<CurvatureSample> samples(lattice.size());
    parallel_for(lattice.size(), [&](std::size_t i) {
        samples[i] = curvature_sample(expr, lattice[i], convention);
    });

    ClassifyOptions options;
    options.flat_tolerance = args.tol_flat;
    options.degree_tolerance = args.tol_degree;
    options.convention = convention;
    Classification classification = classify(expr, lattice, options);

    json report;
    report["tool"] = {{"name", "hypersurf"}, {"version", kToolVersion}};
    report["config"] = config;
    report["homogeneity"] = {{"is_homogeneous", homogeneity.is_homogeneous},
                             {"degree", homogeneity.degree},
                             {"degree_stddev", homogeneity.degree_stddev},
                             {"euler_residual_max", homogeneity.euler_residual_max},
                             {"returns_to_scale", to_string(homogeneity.returns_to_scale)}};
    report["economic_diagnostics"] = {
        {"strictly_increasing", economics.strictly_increasing},
        {"decreasing_efficiency", economics.decreasing_efficiency},
        {"points_checked", economics.points_checked}};

    std::vector<double> k_values, riemann_values, ma_values;
    std::size_t flat_count = 0;
    for (const auto& s : samples) {
        k_values.push_back(s.K);
        riemann_values.push_back(s.riemann_max_abs);
        if (s.monge_ampere_residual) ma_values.push_back(*s.monge_ampere_residual);
        flat_count += s.flat_flagged;
    }
    json summary;
    summary["points"] = samples.size();
    summary["K"] = stats_json(k_values);
    summary["riemann_max_abs"] = stats_json(riemann_values);
    if (!ma_values.empty()) summary["monge_ampere_residual"] = stats_json(ma_values);
    summary["flat_fraction"] =
        static_cast<double>(flat_count) / static_cast<double>(samples.size());
    report["curvature_summary"] = summary;

    json cls;
    cls["verdict"] = to_string(classification.verdict);
    cls["degree"] = classification.degree;
    if (!classification.coefficients.empty()) {
        cls["coefficients"] = classification.coefficients;
        cls["fit_residual"] = classification.fit_residual;
    }
    cls["gk_zero_but_not_flat"] = classification.gk_zero_but_not_flat;
    cls["riemann_max"] = classification.riemann_max;
    cls["k_max_abs"] = classification.k_max_abs;
    cls["flat_fraction"] = classification.flat_fraction;
    if (classification.developable) {
        cls["developable"] = *classification.developable;
        cls["returns_to_scale"] = to_string(classification.homogeneity.returns_to_scale);
        if (classification.verdict == Verdict::MultinomialPower) cls["binomial"] = true;
    }
    report["classification"] = cls;

    if (!args.csv.empty()) {
        std::ostringstream csv;
        for (const auto& name : expr.variables()) csv << name << ',';
        csv << "f,K,Rmax\n";
        for (const auto& s : samples) {
            for (double x : s.point) csv << format17(x) << ',';
            csv << format17(s.value) << ',' << format17(s.K) << ','
                << format17(s.riemann_max_abs) << '\n';
        }
        write_text(args.csv, csv.str());
    }

    double duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json document;
    document["report"] = report;
    document["runtime"] = {{"duration_seconds", duration}};

    std::string text = document.dump(2) + "\n";
    if (!args.out.empty()) write_text(args.out, text);
    else std::cout << text;
    return 0;
}

struct UshakovArgs {
    std::string g_expr;
    std::string h_expr;
    std::string t_range = "0.5:1.5";
    std::string s_range = "0:1";
    std::size_t resolution = 31;
    std::string out;
};

int run_ushakov(const UshakovArgs& args) {
    auto [t_min, t_max] = parse_range(args.t_range, "--trange");
    auto s_parts = split(args.s_range, ':');
    if (s_parts.size() != 2) throw InvalidArgument("--srange must look like min:max");
    double s_min = parse_double(s_parts[0], "--srange");
    double s_max = parse_double(s_parts[1], "--srange");
    if (!(s_min <= s_max)) throw InvalidArgument("--srange requires min <= max");
    if (args.resolution < 2) throw InvalidArgument("--resolution must be >= 2");

    UshakovSurface surface(parse(args.g_expr, {"t"}), parse(args.h_expr, {"t"}),
                           t_min, t_max, s_min, s_max);
    SurfaceMap map = ushakov_map(surface);

    std::ostringstream csv;
    csv << "t,s,x,y,z,K\n";
    double k_max = 0.0;
    const std::size_t n = args.resolution;
    for (std::size_t i = 0; i < n; ++i) {
        double t = t_min + (t_max - t_min) * static_cast<double>(i) /
                               static_cast<double>(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            double s = s_min + (s_max - s_min) * static_cast<double>(j) /
                                   static_cast<double>(n - 1);
            auto p = ushakov_point(surface, t, s);
            double k = parametric_gauss_curvature(map, t, s);
            k_max = std::max(k_max, std::fabs(k));
            csv << format17(t) << ',' << format17(s) << ',' << format17(p[0])
                << ',' << format17(p[1]) << ',' << format17(p[2]) << ','
                << format17(k) << '\n';
        }
    }
    if (!args.out.empty()) write_text(args.out, csv.str());

    json summary = {{"g", args.g_expr},
                    {"h", args.h_expr},
                    {"samples", n * n},
                    {"max_abs_K", k_max}};
    std::cout << summary.dump(2) << "\n";
    return 0;
}

struct OdeArgs {
    double r = 1.5;
    double c = 0.7;
    std::string u_range = "0.1:2";
    std::size_t samples = 257;
    std::string out;
};

int run_ode_check(const OdeArgs& args) {
    auto [u_min, u_max] = parse_range(args.u_range, "--urange");
    ProfileSolution sol = solve_profile_ode(args.r, args.c, u_min, u_max, args.samples);

    if (!args.out.empty()) {
        std::ostringstream csv;
        csv << "u,w_numeric,w_closed,error\n";
        for (std::size_t i = 0; i < sol.u.size(); ++i)
            csv << format17(sol.u[i]) << ',' << format17(sol.w_numeric[i]) << ','
                << format17(sol.w_closed[i]) << ','
                << format17(sol.w_numeric[i] - sol.w_closed[i]) << '\n';
        write_text(args.out, csv.str());
    }

    json summary = {{"r", sol.r},
                    {"c", sol.c},
                    {"samples", sol.u.size()},
                    {"max_error", sol.max_error}};
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int run_families() {
    json catalog = json::array();
    for (const auto& entry : list_families()) {
        catalog.push_back({{"name", entry.name},
                           {"formula", entry.formula},
                           {"parameters", entry.parameters},
                           {"constraints", entry.constraints},
                           {"citation", entry.citation}});
    }
    std::cout << catalog.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature analysis of graph hypersurfaces z = f(x1,...,xn)"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Analyze a function over a grid");
    analyze->add_option("--expr", analyze_args.expr, "Expression source text");
    analyze->add_option("--family", analyze_args.family, "Named production-function family");
    analyze->add_option("--params", analyze_args.params, "Family parameters, e.g. A=1,rho=0.5,c=1,1");
    analyze->add_option("--vars", analyze_args.vars, "Comma-separated variable names")->required();
    analyze->add_option("--domain", analyze_args.domain, "Per-axis min:max ranges (default 0.5:2)");
    analyze->add_option("--grid", analyze_args.grid_resolution, "Lattice resolution per axis");
    analyze->add_option("--tol-flat", analyze_args.tol_flat, "Flatness tolerance");
    analyze->add_option("--tol-degree", analyze_args.tol_degree, "Degree tolerance");
    analyze->add_option("--convention", analyze_args.convention, "Riemann normalization: paper|gauss");
    analyze->add_option("--out", analyze_args.out, "JSON report path (stdout when omitted)");
    analyze->add_option("--csv", analyze_args.csv, "Per-point CSV path");
    analyze->add_option("--seed", analyze_args.seed, "Quasi-random sequence offset");

    UshakovArgs ushakov_args;
    auto* ushakov = app.add_subcommand("ushakov", "Generate a developable surface mesh");
    // free the short -h so the generator option --h can use the name
    ushakov->set_help_flag("--help", "Print this help message and exit");
    ushakov->add_option("--g", ushakov_args.g_expr, "Generator g(t)")->required();
    ushakov->add_option("--h", ushakov_args.h_expr, "Generator h(t)")->required();
    ushakov->add_option("--trange", ushakov_args.t_range, "t range min:max");
    ushakov->add_option("--srange", ushakov_args.s_range, "s range min:max");
    ushakov->add_option("--resolution", ushakov_args.resolution, "Samples per axis");
    ushakov->add_option("--out", ushakov_args.out, "Mesh CSV path");

    OdeArgs ode_args;
    auto* ode = app.add_subcommand("ode-check", "Profile ODE vs closed form");
    ode->add_option("--r", ode_args.r, "Homogeneity degree r (nonzero)");
    ode->add_option("--c", ode_args.c, "Integration constant");
    ode->add_option("--urange", ode_args.u_range, "u range min:max");
    ode->add_option("--samples", ode_args.samples, "Comparison samples");
    ode->add_option("--out", ode_args.out, "Comparison CSV path");

    auto* families = app.add_subcommand("families", "List the built-in families");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_args);
        if (ushakov->parsed()) return run_ushakov(ushakov_args);
        if (ode->parsed()) return run_ode_check(ode_args);
        if (families->parsed()) return run_families();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
