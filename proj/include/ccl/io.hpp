#pragma once

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ccl/analysis.hpp"
#include "ccl/cone.hpp"
#include "ccl/kelvin.hpp"
#include "ccl/radial.hpp"
#include "json.hpp"

namespace ccl {

using json = nlohmann::ordered_json;

// Numbers that may be infinite are written as the string "inf".
inline json number_json(double x) {
    if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
    return json(x);
}

inline double number_from(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ParameterError("missing field '" + key + "'");
    const json& v = j.at(key);
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return kInf;
        throw ParameterError("field '" + key + "' is not a number");
    }
    if (!v.is_number()) throw ParameterError("field '" + key + "' is not a number");
    return v.get<double>();
}

inline int int_from(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw ParameterError("missing integer field '" + key + "'");
    return j.at(key).get<int>();
}

inline Cone cone_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant") || !j.at("variant").is_string())
        throw ParameterError("cone spec needs a string 'variant'");
    const auto v = j.at("variant").get<std::string>();
    if (v == "gamma_t") {
        if (!j.contains("base")) throw ParameterError("gamma_t needs a 'base' cone");
        return Cone::gamma_t(cone_from_json(j.at("base")), number_from(j, "t"));
    }
    const int n = int_from(j, "n");
    if (v == "gamma_k") return Cone::gamma_k(n, int_from(j, "k"));
    if (v == "sigma_theta") return Cone::sigma_theta(n, number_from(j, "theta"));
    if (v == "u_gamma_plus") return Cone::u_gamma_plus(n, number_from(j, "mu"));
    if (v == "l_gamma_plus") return Cone::l_gamma_plus(n, number_from(j, "mu"));
    if (v == "u_gamma_minus") return Cone::u_gamma_minus(n, number_from(j, "mu"));
    if (v == "l_gamma_minus") return Cone::l_gamma_minus(n, number_from(j, "mu"));
    if (v == "gamma_one") return Cone::gamma_one(n);
    throw ParameterError("unknown cone variant '" + v + "'");
}

inline Cone cone_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("malformed cone JSON: ") + e.what());
    }
    return cone_from_json(j);
}

inline json cone_to_json(const Cone& cone) {
    return std::visit(
        [&](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, GammaK>) return {{"variant", "gamma_k"}, {"n", c.n}, {"k", c.k}};
            else if constexpr (std::is_same_v<T, SigmaTheta>) return {{"variant", "sigma_theta"}, {"n", c.n}, {"theta", c.theta}};
            else if constexpr (std::is_same_v<T, UGammaPlus>) return {{"variant", "u_gamma_plus"}, {"n", c.n}, {"mu", c.mu}};
            else if constexpr (std::is_same_v<T, LGammaPlus>) return {{"variant", "l_gamma_plus"}, {"n", c.n}, {"mu", c.mu}};
            else if constexpr (std::is_same_v<T, UGammaMinus>) return {{"variant", "u_gamma_minus"}, {"n", c.n}, {"mu", number_json(c.mu)}};
            else if constexpr (std::is_same_v<T, LGammaMinus>) return {{"variant", "l_gamma_minus"}, {"n", c.n}, {"mu", number_json(c.mu)}};
            else if constexpr (std::is_same_v<T, GammaOne>) return {{"variant", "gamma_one"}, {"n", c.n}};
            else return {{"variant", "gamma_t"}, {"base", cone_to_json(*c.base)}, {"t", c.t}};
        },
        cone.variant());
}

inline json profile_to_json(const ConeProfile& p) {
    return {{"n", p.n}, {"mu_plus", p.mu_plus}, {"mu_minus", number_json(p.mu_minus)},
            {"axis_on_boundary", p.axis_on_boundary}};
}

inline json checks_to_json(const std::vector<CheckEntry>& es) {
    json arr = json::array();
    for (const auto& e : es)
        arr.push_back({{"name", e.name}, {"pass", e.pass}, {"lhs", number_json(e.lhs)}, {"rhs", number_json(e.rhs)}, {"tol", e.tol}});
    return arr;
}

inline json scan_to_json(const ScanReport& s) {
    return {{"check", s.check}, {"pass", s.pass}, {"witness_radius", s.witness_radius},
            {"lhs", number_json(s.lhs)}, {"rhs", number_json(s.rhs)}};
}

inline json family_to_json(const RadialFamily& fam) {
    json c = std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerLaw>) return {{"c1", f.c1}, {"c2", f.c2}};
            else if constexpr (std::is_same_v<T, PlusFamily>) return {{"c3", f.c3}, {"c4", f.c4}, {"mu", f.mu}};
            else if constexpr (std::is_same_v<T, MinusFamilyC>) return {{"c5", f.c5}, {"c6", f.c6}, {"mu", f.mu}};
            else if constexpr (std::is_same_v<T, MinusFamilyD>) return {{"c7", f.c7}, {"c8", f.c8}, {"mu", f.mu}};
            else return {{"h1", f.h1}, {"h2", f.h2}, {"h3", f.h3}, {"h4", f.h4}, {"k", f.k}};
        },
        fam.variant());
    return {{"variant", fam.name()}, {"n", fam.n()}, {"constants", c}};
}

inline RadialFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant") || !j.contains("constants"))
        throw ParameterError("family spec needs 'variant' and 'constants'");
    const auto v = j.at("variant").get<std::string>();
    const int n = int_from(j, "n");
    const json& c = j.at("constants");
    if (v == "power_law") return RadialFamily(n, PowerLaw{number_from(c, "c1"), number_from(c, "c2")});
    if (v == "plus") return RadialFamily(n, PlusFamily{number_from(c, "c3"), number_from(c, "c4"), number_from(c, "mu")});
    if (v == "minus_c") return RadialFamily(n, MinusFamilyC{number_from(c, "c5"), number_from(c, "c6"), number_from(c, "mu")});
    if (v == "minus_d") return RadialFamily(n, MinusFamilyD{number_from(c, "c7"), number_from(c, "c8"), number_from(c, "mu")});
    if (v == "sigma_k_null") {
        SigmaKNull f;
        f.k = int_from(c, "k");
        for (auto [key, dst] : {std::pair{"h1", &f.h1}, {"h2", &f.h2}, {"h3", &f.h3}, {"h4", &f.h4}})
            if (c.contains(key)) *dst = number_from(c, key);
        return RadialFamily(n, f);
    }
    throw ParameterError("unknown family variant '" + v + "'");
}

inline std::string fmt17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

inline void write_family_csv(std::ostream& os, const ConeProfile& p, const RadialFamily& fam,
                             const std::vector<double>& radii, double tol = kValidateTol) {
    os << "r,u,uprime,udoubleprime,V,v,branch\n";
    for (double r : radii) {
        const auto jet = eval_family(fam, r);
        const auto e = radial_eigs(jet);
        os << fmt17(r) << ',' << fmt17(jet.u) << ',' << fmt17(jet.uprime) << ',' << fmt17(jet.udoubleprime) << ','
           << fmt17(e.V) << ',' << fmt17(e.v) << ',' << to_string(branch_classify(p, e, tol)) << '\n';
    }
}

inline void write_kelvin_csv(std::ostream& os, const KelvinScanReport& rep) {
    auto vec = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt17(v[i]);
        return s;
    };
    os << "y,lambda,x,lhs,rhs,margin\n";
    for (const auto& row : rep.rows)
        os << vec(row.y) << ',' << fmt17(row.lambda) << ',' << vec(row.x) << ',' << fmt17(row.lhs) << ','
           << fmt17(row.rhs) << ',' << fmt17(row.margin) << '\n';
}

// Reads "r,u" rows; a header line is skipped, extra columns are ignored.
inline RadialProfile read_profile_csv(std::istream& is, int n) {
    std::vector<double> r, u;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ','))
            throw ParameterError("profile CSV: expected two columns in '" + line + "'");
        try {
            std::size_t pa = 0, pb = 0;
            const double rv = std::stod(a, &pa), uv = std::stod(b, &pb);
            r.push_back(rv);
            u.push_back(uv);
        } catch (const std::exception&) {
            if (first) {
                first = false;
                continue;
            }
            throw ParameterError("profile CSV: non-numeric row '" + line + "'");
        }
        first = false;
    }
    return RadialProfile(std::move(r), std::move(u), n);
}

}  // namespace ccl
