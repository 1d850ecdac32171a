#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ccl/ccl.hpp"
#include "ccl/io.hpp"

namespace ccl {

struct FamilyCase {
    json cone;
    json family;
    Annulus annulus;
};

struct SuiteConfig {
    std::vector<json> cones;
    std::vector<int> dims;
    std::uint64_t seed = 20240101;
    int grid = 200;
    int draws = 20;
    double tol = kValidateTol;
    std::vector<FamilyCase> families;

    void validate() const {
        require(!cones.empty(), "config: cone list is empty");
        require(!dims.empty(), "config: dims list is empty");
        require(tol > 0, "config: tolerance must be positive");
        require(grid >= 2 && draws >= 1, "config: grid and draws must be positive");
        for (int n : dims) require(n >= 3 && n <= 16, "config: dims must lie in [3, 16]");
    }
};

inline SuiteConfig default_suite_config() {
    SuiteConfig c;
    for (int n : {3, 4, 5, 6}) {
        for (int k = 1; k <= n; ++k) c.cones.push_back({{"variant", "gamma_k"}, {"n", n}, {"k", k}});
        for (double th : {0.25, 1.0, 4.0}) c.cones.push_back({{"variant", "sigma_theta"}, {"n", n}, {"theta", th}});
    }
    c.dims = {3, 4, 5, 6, 7, 8};
    return c;
}

inline Annulus annulus_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParameterError("annulus must be [a, b]");
    auto val = [](const json& v) {
        if (v.is_string() && v.get<std::string>() == "inf") return kInf;
        if (!v.is_number()) throw ParameterError("annulus entries must be numbers");
        return v.get<double>();
    };
    return Annulus(val(j[0]), val(j[1]));
}

inline SuiteConfig suite_config_from_json(const json& j) {
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    SuiteConfig c = default_suite_config();
    if (j.contains("cones")) {
        if (!j.at("cones").is_array()) throw ParameterError("config: 'cones' must be an array");
        c.cones.assign(j.at("cones").begin(), j.at("cones").end());
    }
    if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<int>>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("grid")) c.grid = j.at("grid").get<int>();
    if (j.contains("draws")) c.draws = j.at("draws").get<int>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("families"))
        for (const auto& f : j.at("families"))
            c.families.push_back({f.at("cone"), f.at("family"),
                                  f.contains("annulus") ? annulus_from_json(f.at("annulus")) : Annulus(0, kInf)});
    return c;
}

// Random members of the classification that are admissible for the given profile.
struct FamilyDraw {
    RadialFamily family;
    Annulus annulus;
};

inline std::vector<FamilyDraw> permitted_draws(const ConeProfile& p, std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> pos(0.2, 5.0), unit(0.0, 1.0);
    const int n = p.n;
    std::vector<FamilyDraw> out;
    const bool log_case = is_log_exponent(p.mu_plus);
    const bool has_minus = std::isfinite(p.mu_minus);
    for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
        switch (i % 4) {
            case 0: {
                const double c2 = log_case ? (n - 2) * unit(rng) : (unit(rng) < 0.5 ? 0.0 : n - 2.0);
                out.push_back({RadialFamily(n, PowerLaw{pos(rng), c2}), Annulus(0, kInf)});
                break;
            }
            case 1:
                if (log_case) continue;
                out.push_back({RadialFamily(n, PlusFamily{pos(rng), pos(rng), p.mu_plus}), Annulus(0, kInf)});
                break;
            case 2: {
                if (!has_minus) continue;
                const double c5 = pos(rng), c6 = pos(rng);
                const double edge = std::pow(c5 / c6, 1 / (p.mu_minus - 1));
                out.push_back({RadialFamily(n, MinusFamilyC{c5, c6, p.mu_minus}), Annulus(0, edge)});
                break;
            }
            default: {
                if (!has_minus) continue;
                const double c7 = pos(rng), c8 = pos(rng);
                const double edge = std::pow(c7 / c8, 1 / (p.mu_minus - 1));
                out.push_back({RadialFamily(n, MinusFamilyD{c7, c8, p.mu_minus}), Annulus(edge, kInf)});
                break;
            }
        }
    }
    return out;
}

// (profile, family) pairs that the classification excludes.
inline std::vector<FamilyDraw> forbidden_draws(const ConeProfile& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0.5, 3.0);
    const int n = p.n;
    std::vector<FamilyDraw> out;
    out.push_back({RadialFamily(n, PowerLaw{pos(rng), n - 1.0}), Annulus(0, kInf)});
    if (!is_log_exponent(p.mu_plus)) out.push_back({RadialFamily(n, PowerLaw{pos(rng), 0.5 * (n - 2)}), Annulus(0, kInf)});
    const double wrong = p.mu_plus + (p.mu_plus < n - 1.5 ? 0.5 : -0.5);
    if (!is_log_exponent(wrong) && wrong > -1)
        out.push_back({RadialFamily(n, PlusFamily{pos(rng), pos(rng), wrong}), Annulus(0, kInf)});
    if (!std::isfinite(p.mu_minus)) {
        out.push_back({RadialFamily(n, MinusFamilyC{1.0, 1.0, n + 1.0}), Annulus(0, 1)});
    } else {
        const double mu = p.mu_minus + 1;
        out.push_back({RadialFamily(n, MinusFamilyC{1.0, 1.0, mu}), Annulus(0, 1)});
    }
    return out;
}

struct SuiteResult {
    std::string name;
    bool pass = true;
    json checks = json::array();

    void add(const std::string& what, bool ok, double lhs, double rhs) {
        pass = pass && ok;
        checks.push_back({{"check", what}, {"pass", ok}, {"lhs", number_json(lhs)}, {"rhs", number_json(rhs)}});
    }
};

namespace suites {

inline SuiteResult exponents(const std::vector<Cone>& cones) {
    SuiteResult s{"exponents"};
    for (const auto& c : cones) {
        const auto label = c.describe();
        for (const auto& e : exponent_bound_report(c)) s.add(label + " " + e.name, e.pass, e.lhs, e.rhs);
        if (const auto* g = std::get_if<GammaK>(&c.variant())) {
            const double closed = static_cast<double>(g->n - g->k) / g->k;
            const double got = mu_plus(c);
            s.add(label + " mu_plus closed form", std::abs(got - closed) <= 1e-10, got, closed);
            const double mm = mu_minus(c);
            const double want = g->k == 1 ? g->n - 1.0 : kInf;
            s.add(label + " mu_minus closed form", g->k == 1 ? std::abs(mm - want) <= 1e-10 : mm == want, mm, want);
        }
        if (const auto* t = std::get_if<SigmaTheta>(&c.variant())) {
            const double closed = (t->n - 1) * t->theta / (1 + t->theta);
            const double got = mu_plus(c);
            s.add(label + " mu_plus closed form", std::abs(got - closed) <= 1e-10, got, closed);
        }
    }
    return s;
}

inline SuiteResult classification(const std::vector<Cone>& cones, const SuiteConfig& cfg) {
    SuiteResult s{"classification"};
    std::mt19937_64 rng(cfg.seed ^ 0x5eedULL);
    for (const auto& c : cones) {
        const auto p = cone_profile(c);
        for (const auto& d : permitted_draws(p, rng, cfg.draws)) {
            const auto rep = validate_family(p, d.family, d.annulus, cfg.grid, cfg.tol);
            s.add(c.describe() + " permits " + d.family.name(), rep.pass, rep.max_residual, cfg.tol);
        }
        for (const auto& d : forbidden_draws(p, rng)) {
            const auto rep = validate_family(p, d.family, d.annulus, cfg.grid, cfg.tol);
            s.add(c.describe() + " rejects " + d.family.name(), !rep.pass, rep.max_residual, cfg.tol);
        }
    }
    return s;
}

inline double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline SuiteResult bvp(const std::vector<Cone>& cones, const SuiteConfig& cfg) {
    SuiteResult s{"bvp"};
    std::mt19937_64 rng(cfg.seed ^ 0xb0bULL);
    std::uniform_real_distribution<double> ra(0.2, 2.0), rb(1.2, 4.0), unit(0.0, 1.0);
    for (const auto& c : cones) {
        const auto p = cone_profile(c);
        for (int i = 0; i < cfg.draws; ++i) {
            const double a = ra(rng), b = a * rb(rng), beta = ra(rng);
            const double U = (p.n - 2) * std::log(b / a);
            // axis cones are feasible only for 0 <= ln(alpha/beta) <= U
            const double L = p.axis_on_boundary ? unit(rng) * U : (3 * unit(rng) - 1) * U;
            const double alpha = beta * std::exp(L);
            const auto res = solve_radial_bvp(p, Annulus(a, b), alpha, beta);
            const auto* fam = std::get_if<RadialFamily>(&res);
            if (!fam) {
                s.add(c.describe() + " feasible instance solved", false, 0, 0);
                continue;
            }
            const double err = std::max(relative_gap(family_value(*fam, a), alpha), relative_gap(family_value(*fam, b), beta));
            s.add(c.describe() + " boundary round trip", err <= 1e-10, err, 1e-10);
            const auto other = shoot_radial_bvp(p, Annulus(a, b), alpha, beta);
            if (const auto* g = std::get_if<RadialFamily>(&other)) {
                double gap = 0;
                for (double r : log_grid(a, b, 16, true)) gap = std::max(gap, relative_gap(family_value(*g, r), family_value(*fam, r)));
                s.add(c.describe() + " solver paths agree", gap <= 1e-8, gap, 1e-8);
            } else {
                s.add(c.describe() + " shooting path solved", false, 0, 0);
            }
        }
    }
    return s;
}

inline SuiteResult bocher(const std::vector<Cone>& cones, const SuiteConfig& cfg) {
    SuiteResult s{"bocher"};
    std::mt19937_64 rng(cfg.seed ^ 0xb0c4ULL);
    std::uniform_real_distribution<double> pos(0.2, 5.0);
    const auto radii = log_grid(1e-6, 0.5, 120, true);
    for (const auto& c : cones) {
        const auto p = cone_profile(c);
        if (p.mu_plus <= 1 + kLogRouteTol) continue;
        for (int i = 0; i < cfg.draws; ++i) {
            const RadialFamily fam(p.n, PlusFamily{pos(rng), pos(rng), p.mu_plus});
            const auto prof = RadialProfile::sample(fam, radii);
            const auto d = bocher_decompose(p, prof);
            const double err = bocher_reassembly_error(p, prof, d);
            s.add(c.describe() + " reassembly", err <= 1e-9, err, 1e-9);
        }
    }
    return s;
}

inline SuiteResult kelvin(const SuiteConfig& cfg) {
    SuiteResult s{"kelvin"};
    for (int n : cfg.dims) {
        const Field one = [](std::span<const double>) { return 1.0; };
        const Field fund = [n](std::span<const double> x) { return std::pow(norm(x), 2.0 - n); };
        const auto scan1 = kelvin_scan(one, n, 100, cfg.seed);
        s.add("n=" + std::to_string(n) + " hypothesis w=1", scan1.pass, scan1.worst_margin, -kKelvinSlack);
        const auto scan2 = kelvin_scan(fund, n, 100, cfg.seed + 1);
        s.add("n=" + std::to_string(n) + " hypothesis w=r^(2-n)", scan2.pass, scan2.worst_margin, -kKelvinSlack);
        std::mt19937_64 rng(cfg.seed + n);
        std::uniform_real_distribution<double> coord(-0.3, 0.3), rad(0.2, 0.5);
        double inv = 0;
        for (int m = 0; m < 10; ++m) {
            std::vector<double> y(n);
            for (double& c : y) c = coord(rng);
            const KelvinMap map(y, rad(rng));
            inv = std::max(inv, kelvin_involution_check(fund, map, kelvin_shell_samples(map, 20, cfg.seed + m)));
        }
        s.add("n=" + std::to_string(n) + " involution", inv <= 1e-12, inv, 1e-12);
    }
    return s;
}

inline SuiteResult families(const SuiteConfig& cfg) {
    SuiteResult s{"families"};
    for (const auto& fc : cfg.families) {
        const Cone cone = cone_from_json(fc.cone);
        const RadialFamily fam = family_from_json(fc.family);
        const auto rep = validate_family(cone, fam, fc.annulus, cfg.grid, cfg.tol);
        std::string what = cone.describe() + " " + fam.name();
        for (const auto& pr : rep.problems) what += "; " + pr;
        s.add(what, rep.pass, rep.max_residual, cfg.tol);
    }
    return s;
}

}  // namespace suites

struct VerifyReport {
    bool pass = true;
    json body;
};

// Suites run concurrently; the report is assembled in a fixed order.
inline VerifyReport run_verify(const SuiteConfig& cfg) {
    cfg.validate();
    std::vector<Cone> cones;
    for (const auto& j : cfg.cones) cones.push_back(cone_from_json(j));
    std::vector<std::future<SuiteResult>> jobs;
    jobs.push_back(std::async(std::launch::async, [&] { return suites::exponents(cones); }));
    jobs.push_back(std::async(std::launch::async, [&] { return suites::classification(cones, cfg); }));
    jobs.push_back(std::async(std::launch::async, [&] { return suites::bvp(cones, cfg); }));
    jobs.push_back(std::async(std::launch::async, [&] { return suites::bocher(cones, cfg); }));
    jobs.push_back(std::async(std::launch::async, [&] { return suites::kelvin(cfg); }));
    jobs.push_back(std::async(std::launch::async, [&] { return suites::families(cfg); }));
    VerifyReport rep;
    json list = json::array();
    for (auto& j : jobs) {
        auto s = j.get();
        rep.pass = rep.pass && s.pass;
        int failed = 0;
        for (const auto& c : s.checks) failed += c["pass"].get<bool>() ? 0 : 1;
        list.push_back({{"suite", s.name}, {"pass", s.pass}, {"checks", s.checks.size()}, {"failed", failed}, {"results", s.checks}});
    }
    rep.body = {{"seed", cfg.seed}, {"grid", cfg.grid}, {"draws", cfg.draws}, {"tol", cfg.tol}, {"pass", rep.pass}, {"suites", list}};
    return rep;
}

}  // namespace ccl
