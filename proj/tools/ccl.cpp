#include <cstdlib>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccl/io.hpp"
#include "ccl/suite.hpp"

namespace fs = std::filesystem;
using namespace ccl;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool as_json = false;
    std::uint64_t seed = 20240101;
    int grid = 200;
    double tol = kValidateTol;
    std::string out_dir;
};

std::uint64_t effective_seed(std::uint64_t seed) {
    if (const char* env = std::getenv("CCL_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParameterError("CCL_SEED is not an integer");
        }
    }
    return seed;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Accepts inline JSON or @file.
json parse_arg_json(const std::string& text, const char* what) {
    const std::string body = (!text.empty() && text[0] == '@') ? read_file(text.substr(1)) : text;
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

std::ofstream open_out(const Options& o, const std::string& name) {
    fs::create_directories(o.out_dir);
    const auto path = fs::path(o.out_dir) / name;
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    return f;
}

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

int cmd_cone_info(const std::string& spec, const Options& o) {
    const Cone cone = cone_from_json(parse_arg_json(spec, "cone"));
    const auto prof = cone_profile(cone);
    const auto checks = exponent_bound_report(cone);
    if (o.as_json) {
        std::cout << json{{"cone", cone_to_json(cone)}, {"profile", profile_to_json(prof)},
                          {"checks", checks_to_json(checks)}, {"pass", all_pass(checks)}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << cone.describe() << '\n'
                  << "  mu_plus  = " << fmt(prof.mu_plus) << '\n'
                  << "  mu_minus = " << fmt(prof.mu_minus) << '\n'
                  << "  (1,0,...,0) on boundary: " << (prof.axis_on_boundary ? "yes" : "no") << '\n';
        for (const auto& e : checks)
            std::cout << "  " << (e.pass ? "ok   " : "FAIL ") << e.name << ": " << fmt(e.lhs) << " <= " << fmt(e.rhs)
                      << '\n';
    }
    return all_pass(checks) ? 0 : 1;
}

int cmd_mu(const std::string& spec, const Options& o) {
    const Cone cone = cone_from_json(parse_arg_json(spec, "cone"));
    const auto prof = cone_profile(cone);
    if (o.as_json)
        std::cout << profile_to_json(prof).dump() << '\n';
    else
        std::cout << fmt(prof.mu_plus) << ' ' << fmt(prof.mu_minus) << '\n';
    return 0;
}

int cmd_bvp(const std::string& spec, double a, double b, double alpha, double beta, const Options& o) {
    const Cone cone = cone_from_json(parse_arg_json(spec, "cone"));
    const auto res = solve_radial_bvp(cone, Annulus(a, b), alpha, beta);
    if (const auto* bad = std::get_if<Infeasible>(&res)) {
        if (o.as_json)
            std::cout << json{{"feasible", false}, {"side", bad->side}, {"ln_ratio", bad->ln_ratio}, {"bound", bad->bound},
                              {"message", bad->message()}}
                             .dump()
                      << '\n';
        else
            std::cout << bad->message() << "; boundary data must satisfy 0 <= ln(alpha/beta) <= (n-2) ln(b/a)\n";
        return 1;
    }
    const auto& fam = std::get<RadialFamily>(res);
    if (o.as_json)
        std::cout << json{{"feasible", true}, {"family", family_to_json(fam)}}.dump() << '\n';
    else
        std::cout << family_to_json(fam).dump() << '\n';
    if (!o.out_dir.empty()) {
        auto f = open_out(o, "bvp_profile.csv");
        f << "r,u\n";
        for (double r : log_grid(a, b, o.grid, true)) f << fmt17(r) << ',' << fmt17(family_value(fam, r)) << '\n';
    }
    return 0;
}

int cmd_family_eval(const std::string& cone_spec, const std::string& fam_spec, double a, double b, const Options& o) {
    const Cone cone = cone_from_json(parse_arg_json(cone_spec, "cone"));
    const RadialFamily fam = family_from_json(parse_arg_json(fam_spec, "family"));
    const Annulus ann(a, b);
    const auto prof = cone_profile(cone);
    const auto rep = validate_family(prof, fam, ann, o.grid, o.tol);
    const json out{{"family", family_to_json(fam)}, {"pass", rep.pass}, {"max_residual", rep.max_residual},
                   {"worst_radius", rep.worst_radius}, {"null", rep.null_count}, {"plus", rep.plus_count},
                   {"minus", rep.minus_count}, {"violations", rep.violation_count}, {"problems", rep.problems}};
    if (o.as_json) {
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << (rep.pass ? "valid" : "INVALID") << " max residual " << fmt(rep.max_residual) << '\n';
        for (const auto& p : rep.problems) std::cout << "  " << p << '\n';
    }
    if (!o.out_dir.empty()) {
        const auto [lo, hi] = sampling_window(ann);
        std::vector<double> radii;
        for (double r : log_grid(lo, hi, o.grid, false))
            if (r > positivity_interval(fam).first && r < positivity_interval(fam).second) radii.push_back(r);
        auto f = open_out(o, "family_profile.csv");
        write_family_csv(f, prof, fam, radii, o.tol);
    }
    return rep.pass ? 0 : 1;
}

RadialProfile load_profile(const std::string& csv, const std::string& fam_spec, int n, int grid) {
    if (!csv.empty()) {
        std::ifstream in(csv);
        if (!in) throw IoError("cannot read " + csv);
        return read_profile_csv(in, n);
    }
    if (fam_spec.empty()) throw ParameterError("need --csv or --family");
    const RadialFamily fam = family_from_json(parse_arg_json(fam_spec, "family"));
    return RadialProfile::sample(fam, log_grid(1e-6, 0.5, grid, true));
}

int cmd_bocher(const std::string& cone_spec, const std::string& csv, const std::string& fam_spec, const Options& o) {
    const Cone cone = cone_from_json(parse_arg_json(cone_spec, "cone"));
    const auto prof = cone_profile(cone);
    const auto p = load_profile(csv, fam_spec, prof.n, o.grid);
    const auto d = bocher_decompose(prof, p);
    json out{{"case", to_string(d.kind)}, {"a", d.a}, {"a_inf", d.a_inf}, {"envelope", d.envelope},
             {"vanishing", d.vanishing}, {"positive", d.positive}, {"max_deviation", d.max_deviation},
             {"problems", d.problems}};
    if (d.alpha) out["alpha"] = *d.alpha;
    if (!d.ring_w.empty()) out["ring_w_inner"] = d.ring_w.front(), out["ring_w_outer"] = d.ring_w.back();
    if (d.kind != BocherCase::MuPlusLt1) out["reassembly_error"] = bocher_reassembly_error(prof, p, d);
    const bool pass = d.problems.empty() && (d.kind == BocherCase::MuPlusLt1 || d.dichotomy());
    out["pass"] = pass;
    if (o.as_json) {
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "case " << to_string(d.kind) << "  a = " << fmt(d.a);
        if (d.alpha) std::cout << "  alpha = " << fmt(*d.alpha);
        std::cout << "  ring term " << (d.vanishing ? "vanishes" : d.positive ? "positive" : "mixed") << '\n';
        for (const auto& pr : d.problems) std::cout << "  " << pr << '\n';
    }
    return pass ? 0 : 1;
}

int cmd_harnack(const std::string& csv, const std::string& fam_spec, int n, double eps, const Options& o) {
    const auto p = load_profile(csv, fam_spec, n, o.grid);
    const auto h = harnack_report(p, eps);
    if (o.as_json)
        std::cout << json{{"sup_over_inf", h.sup_over_inf}, {"max_scaled_log_gradient", h.max_scaled_log_gradient},
                          {"witness_radius", h.witness_radius}, {"samples", h.samples}}
                         .dump(2)
                  << '\n';
    else
        std::cout << "sup/inf = " << fmt(h.sup_over_inf) << "  max |dln u/dln r| = " << fmt(h.max_scaled_log_gradient)
                  << " at r = " << fmt(h.witness_radius) << '\n';
    return 0;
}

Field named_field(const std::string& name, int n) {
    if (name == "one") return [](std::span<const double>) { return 1.0; };
    if (name == "fundamental") return [n](std::span<const double> x) { return std::pow(norm(x), 2.0 - n); };
    if (name == "shifted") return [n](std::span<const double> x) { return std::pow(norm(x), 2.0 - n) + 1.0; };
    throw ParameterError("unknown field '" + name + "' (one, fundamental, shifted)");
}

int cmd_kelvin_scan(const std::string& field, int n, int samples, const Options& o) {
    const auto w = named_field(field, n);
    const auto rep = kelvin_scan(w, n, samples, o.seed);
    if (o.as_json)
        std::cout << json{{"field", field}, {"n", n}, {"samples", samples}, {"worst_margin", rep.worst_margin},
                          {"pass", rep.pass}}
                         .dump()
                  << '\n';
    else
        std::cout << (rep.pass ? "hypothesis holds" : "hypothesis VIOLATED") << " on " << rep.rows.size()
                  << " samples, worst margin " << fmt(rep.worst_margin) << '\n';
    if (!o.out_dir.empty()) {
        auto f = open_out(o, "kelvin_scan.csv");
        write_kelvin_csv(f, rep);
    }
    return rep.pass ? 0 : 1;
}

int cmd_verify(const std::string& config_path, const Options& o, bool seed_set, bool grid_set, bool tol_set) {
    SuiteConfig cfg = default_suite_config();
    if (!config_path.empty()) cfg = suite_config_from_json(parse_arg_json("@" + config_path, "config"));
    if (seed_set || std::getenv("CCL_SEED")) cfg.seed = o.seed;
    if (grid_set) cfg.grid = o.grid;
    if (tol_set) cfg.tol = o.tol;
    const auto rep = run_verify(cfg);
    json body = rep.body;
    if (!o.out_dir.empty()) {
        json stamped = body;
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::ostringstream ts;
        ts << std::put_time(std::gmtime(&now), "%FT%TZ");
        stamped["timestamp"] = ts.str();
        auto f = open_out(o, "verify_report.json");
        f << stamped.dump(2) << '\n';
        if (!f) throw IoError("failed writing report");
    }
    if (o.as_json) {
        std::cout << body.dump(2) << '\n';
    } else {
        for (const auto& s : body["suites"]) {
            std::cout << (s["pass"].get<bool>() ? "PASS " : "FAIL ") << s["suite"].get<std::string>() << "  "
                      << s["failed"].get<int>() << " failed of " << s["checks"].get<std::size_t>() << '\n';
            for (const auto& c : s["results"])
                if (!c["pass"].get<bool>()) std::cout << "    " << c["check"].get<std::string>() << '\n';
        }
    }
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cone exponents, radial classification and analysis checks for conformal Hessian equations"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.as_json, "Machine-readable output");
    auto* seed_opt = app.add_option("--seed", o.seed, "Random seed (CCL_SEED overrides)");
    auto* grid_opt = app.add_option("--grid", o.grid, "Grid size")->check(CLI::Range(2, 1000000));
    auto* tol_opt = app.add_option("--tol", o.tol, "Validation tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out_dir, "Output directory for CSV and reports");

    std::string spec, fam_spec, csv, config, field = "fundamental";
    double a = 0, b = 0, alpha = 0, beta = 0, eps = 0.125;
    int n = 3, samples = 1000;
    int code = 0;

    auto* cone = app.add_subcommand("cone", "Cone inspection");
    cone->require_subcommand(1);
    auto* info = cone->add_subcommand("info", "Exponents and structural checks");
    info->add_option("spec", spec, "Cone JSON or @file")->required();

    auto* mu = app.add_subcommand("mu", "Print mu_plus and mu_minus");
    mu->add_option("spec", spec, "Cone JSON or @file")->required();

    auto* bvp = app.add_subcommand("bvp", "Solve the radial two-point problem on an annulus");
    bvp->add_option("spec", spec, "Cone JSON or @file")->required();
    bvp->add_option("a", a)->required();
    bvp->add_option("b", b)->required();
    bvp->add_option("alpha", alpha)->required();
    bvp->add_option("beta", beta)->required();

    auto* family = app.add_subcommand("family", "Radial family tools");
    family->require_subcommand(1);
    auto* eval = family->add_subcommand("eval", "Validate a family against a cone and emit its profile");
    std::vector<double> ann{0.0, kInf};
    eval->add_option("cone", spec, "Cone JSON or @file")->required();
    eval->add_option("family", fam_spec, "Family JSON or @file")->required();
    eval->add_option("--annulus", ann, "Inner and outer radius")->expected(2);

    auto* bocher = app.add_subcommand("bocher", "Decompose a profile near its singularity");
    bocher->add_option("cone", spec, "Cone JSON or @file")->required();
    bocher->add_option("--csv", csv, "Profile CSV with columns r,u");
    bocher->add_option("--family", fam_spec, "Family JSON sampled on (1e-6, 0.5)");

    auto* harnack = app.add_subcommand("harnack", "Harnack quotient and scaled log-gradient");
    harnack->add_option("--csv", csv, "Profile CSV with columns r,u");
    harnack->add_option("--family", fam_spec, "Family JSON sampled on (1e-6, 0.5)");
    harnack->add_option("--n", n, "Dimension for CSV input")->check(CLI::Range(3, 16));
    harnack->add_option("--eps", eps, "Interior margin")->check(CLI::Range(0.0, 1.0));

    auto* kelvin = app.add_subcommand("kelvin", "Kelvin transform checks");
    kelvin->require_subcommand(1);
    auto* scan = kelvin->add_subcommand("scan", "Scan the reflection hypothesis on the unit ball");
    scan->add_option("--field", field, "one, fundamental or shifted");
    scan->add_option("--n", n, "Dimension")->check(CLI::Range(3, 16));
    scan->add_option("--samples", samples, "Number of (y, lambda, x) samples")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Run every verification suite");
    verify->add_option("--config", config, "Suite configuration JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        o.seed = effective_seed(o.seed);
        if (info->parsed()) {
            code = cmd_cone_info(spec, o);
        } else if (mu->parsed()) {
            code = cmd_mu(spec, o);
        } else if (bvp->parsed()) {
            code = cmd_bvp(spec, a, b, alpha, beta, o);
        } else if (eval->parsed()) {
            code = cmd_family_eval(spec, fam_spec, ann.at(0), ann.at(1), o);
        } else if (bocher->parsed()) {
            code = cmd_bocher(spec, csv, fam_spec, o);
        } else if (harnack->parsed()) {
            if (!fam_spec.empty()) n = family_from_json(parse_arg_json(fam_spec, "family")).n();
            code = cmd_harnack(csv, fam_spec, n, eps, o);
        } else if (scan->parsed()) {
            code = cmd_kelvin_scan(field, n, samples, o);
        } else if (verify->parsed()) {
            code = cmd_verify(config, o, seed_opt->count() > 0, grid_opt->count() > 0, tol_opt->count() > 0);
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return code;
}
