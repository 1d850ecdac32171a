#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ccl/bisect.hpp"
#include "ccl/cone.hpp"
#include "ccl/schouten.hpp"

namespace ccl {

inline constexpr double kLogRouteTol = 1e-9;

inline bool is_log_exponent(double mu) { return std::abs(mu - 1.0) < kLogRouteTol; }

struct PowerLaw {
    double c1;
    double c2;
};
struct PlusFamily {
    double c3;
    double c4;
    double mu;
};
struct MinusFamilyC {
    double c5;
    double c6;
    double mu;
};
struct MinusFamilyD {
    double c7;
    double c8;
    double mu;
};
// Radial solutions of sigma_k = 0 with no sign restriction on the constants.
struct SigmaKNull {
    double h1 = 0, h2 = 0, h3 = 0, h4 = 0;
    int k = 1;
};

struct Annulus {
    double a = 0;
    double b = kInf;

    Annulus() = default;
    Annulus(double a_, double b_) : a(a_), b(b_) {
        require(a >= 0 && a < b && !std::isnan(b), "annulus: need 0 <= a < b");
    }
    bool finite() const { return a > 0 && std::isfinite(b); }
    bool contains(double r) const { return r > a && r < b; }
};

class RadialFamily {
public:
    using Variant = std::variant<PowerLaw, PlusFamily, MinusFamilyC, MinusFamilyD, SigmaKNull>;

    RadialFamily(int n, Variant v) : n_(n), v_(std::move(v)) {
        require(n >= 3, "family: dimension must be >= 3");
        std::visit([&](const auto& f) { check(f); }, v_);
    }

    int n() const { return n_; }
    const Variant& variant() const { return v_; }
    template <class T>
    const T* get() const { return std::get_if<T>(&v_); }

    std::string name() const {
        return std::visit(
            [](const auto& f) -> std::string {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, PowerLaw>) return "power_law";
                else if constexpr (std::is_same_v<T, PlusFamily>) return "plus";
                else if constexpr (std::is_same_v<T, MinusFamilyC>) return "minus_c";
                else if constexpr (std::is_same_v<T, MinusFamilyD>) return "minus_d";
                else return "sigma_k_null";
            },
            v_);
    }

    // Writes the family as u = (A r^(1-mu) + B)^((n-2)/(mu-1)) or, in the log case, u = A r^(-B).
    struct Shape {
        bool log = false;
        double A = 0, B = 0, mu = 0;
    };
    Shape shape() const {
        return std::visit(
            [&](const auto& f) -> Shape {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, PowerLaw>) return {true, f.c1, f.c2, 1.0};
                else if constexpr (std::is_same_v<T, PlusFamily>) return {false, f.c3, f.c4, f.mu};
                else if constexpr (std::is_same_v<T, MinusFamilyC>) return {false, f.c5, -f.c6, f.mu};
                else if constexpr (std::is_same_v<T, MinusFamilyD>) return {false, -f.c7, f.c8, f.mu};
                else {
                    if (2 * f.k == n_) return {true, f.h1, f.h2, 1.0};
                    return {false, f.h3, f.h4, static_cast<double>(n_ - f.k) / f.k};
                }
            },
            v_);
    }

private:
    void check(const PowerLaw& f) const {
        require(f.c1 > 0 && std::isfinite(f.c1) && std::isfinite(f.c2), "power law: need C1 > 0");
    }
    void check(const PlusFamily& f) const {
        require(std::isfinite(f.mu) && f.mu > -1 && f.mu <= n_ - 1, "plus family: mu outside (-1, n-1]");
        require(!is_log_exponent(f.mu), "plus family: mu = 1 is the power law case");
        require(std::isfinite(f.c3) && std::isfinite(f.c4), "plus family: constants must be finite");
    }
    template <class T>
    void check_minus(const T& f) const {
        require(std::isfinite(f.mu) && f.mu >= n_ - 1, "minus family: need finite mu >= n-1");
    }
    void check(const MinusFamilyC& f) const {
        check_minus(f);
        require(f.c5 > 0 && f.c6 >= 0, "minus family c: need C5 > 0, C6 >= 0");
    }
    void check(const MinusFamilyD& f) const {
        check_minus(f);
        require(f.c7 >= 0 && f.c8 > 0, "minus family d: need C7 >= 0, C8 > 0");
    }
    void check(const SigmaKNull& f) const {
        require(f.k >= 1 && f.k <= n_, "sigma_k family: need 1 <= k <= n");
        if (2 * f.k == n_) require(f.h1 > 0, "sigma_k family: need positive coefficient");
    }

    int n_;
    Variant v_;
};

namespace detail {

inline double exponent_q(int n, double mu) { return (n - 2) / (mu - 1); }

inline RadialJet eval_shape(int n, const RadialFamily::Shape& s, double r) {
    require(r > 0, "eval_family: r must be positive");
    if (s.log) {
        const double u = s.A * std::pow(r, -s.B);
        const double up = -s.B * u / r;
        return RadialJet(n, r, u, up, s.B * (s.B + 1) * u / (r * r)).with_deficit(u * (n - 2 - s.B), up * (n - 2 - s.B));
    }
    const double q = exponent_q(n, s.mu);
    const double sr = std::pow(r, 1 - s.mu);
    const double w = s.A * sr + s.B;
    if (!(w > 0)) throw DomainError("eval_family: base is not positive at r");
    const double w1 = s.A * (1 - s.mu) * sr / r;
    const double w2 = s.A * (1 - s.mu) * (-s.mu) * sr / (r * r);
    const double u = std::pow(w, q);
    const double g = w1 / w;
    const double up = u * q * g;
    return RadialJet(n, r, u, up, u * (q * (q - 1) * g * g + q * w2 / w))
        .with_deficit((n - 2) * u * s.B / w, (n - 2) * s.B * u * (q - 1) * g / w);
}

}  // namespace detail

inline RadialJet eval_family(const RadialFamily& fam, double r) {
    return detail::eval_shape(fam.n(), fam.shape(), r);
}

inline double family_value(const RadialFamily& fam, double r) { return eval_family(fam, r).u; }

// Largest open interval (possibly empty, a >= b) on which the family is positive.
inline std::pair<double, double> positivity_interval(const RadialFamily& fam) {
    const auto s = fam.shape();
    if (s.log) return {0.0, kInf};
    // w(r) = A r^(1-mu) + B; with t = r^(1-mu) ranging over (0, inf)
    if (s.A == 0) return s.B > 0 ? std::pair{0.0, kInf} : std::pair{1.0, 0.0};
    const double ratio = -s.B / s.A;
    if (ratio <= 0) {
        if (s.A > 0 || s.B > 0) return {0.0, kInf};
        return {1.0, 0.0};
    }
    const double rstar = std::pow(ratio, 1 / (1 - s.mu));
    const bool t_increasing = (1 - s.mu) > 0;
    const bool pos_above = s.A > 0;  // w > 0 for t > ratio
    if (pos_above == t_increasing) return {rstar, kInf};
    return {0.0, rstar};
}

inline std::vector<double> log_grid(double lo, double hi, int count, bool include_ends) {
    require(lo > 0 && hi > lo && count >= 2, "log_grid: need 0 < lo < hi and count >= 2");
    std::vector<double> r(static_cast<std::size_t>(count));
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < count; ++i) {
        const double t = include_ends ? static_cast<double>(i) / (count - 1)
                                      : static_cast<double>(i + 1) / (count + 1);
        r[i] = std::exp(l0 + t * (l1 - l0));
    }
    if (include_ends) {
        r.front() = lo;
        r.back() = hi;
    }
    return r;
}

// Finite sampling window for a possibly unbounded annulus.
inline std::pair<double, double> sampling_window(const Annulus& ann) {
    double lo = ann.a, hi = ann.b;
    if (!std::isfinite(hi)) hi = std::max(1.0, 2 * lo) * 1e6;
    if (lo <= 0) lo = std::min(1.0, hi) * 1e-6;
    return {lo, hi};
}

struct FamilyReport {
    bool pass = true;
    int null_count = 0, plus_count = 0, minus_count = 0, violation_count = 0;
    double max_residual = 0;  // |V + mu v| / (|V| + |v|) over non-null points
    double worst_radius = 0;
    std::vector<std::string> problems;
};

inline constexpr double kValidateTol = 1e-8;

namespace detail {

inline bool same_exponent(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

inline void constant_constraints(const ConeProfile& p, const RadialFamily& fam, const Annulus& ann,
                                 FamilyReport& rep) {
    const int n = p.n;
    auto fail = [&](std::string why) {
        rep.pass = false;
        rep.problems.push_back(std::move(why));
    };
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerLaw>) {
                const bool flat = std::abs(f.c2) <= 1e-12 || std::abs(f.c2 - (n - 2)) <= 1e-12 * n;
                if (!is_log_exponent(p.mu_plus) && !flat) fail("power law needs mu_plus = 1");
                if (f.c2 < -1e-12 || f.c2 > (n - 2) + 1e-12 * n) fail("power law needs 0 <= C2 <= n-2");
            } else if constexpr (std::is_same_v<T, PlusFamily>) {
                if (f.c3 < 0 || f.c4 < 0 || !(f.c3 + f.c4 > 0)) fail("plus family needs C3, C4 >= 0 and C3 + C4 > 0");
                if (!same_exponent(f.mu, p.mu_plus) && f.c3 * f.c4 != 0) fail("plus family exponent differs from mu_plus");
            } else if constexpr (std::is_same_v<T, MinusFamilyC>) {
                if (!std::isfinite(p.mu_minus)) fail("minus family needs mu_minus < inf");
                else if (!same_exponent(f.mu, p.mu_minus) && f.c6 != 0) fail("minus family exponent differs from mu_minus");
                const double end = std::isfinite(ann.b) ? f.c5 * std::pow(ann.b, 1 - f.mu) - f.c6 : -f.c6;
                if (end < -1e-12 * (f.c5 * (std::isfinite(ann.b) ? std::pow(ann.b, 1 - f.mu) : 0) + f.c6))
                    fail("minus family c is not positive up to the outer radius");
            } else if constexpr (std::is_same_v<T, MinusFamilyD>) {
                if (!std::isfinite(p.mu_minus)) fail("minus family needs mu_minus < inf");
                else if (!same_exponent(f.mu, p.mu_minus) && f.c7 != 0) fail("minus family exponent differs from mu_minus");
                const double sa = ann.a > 0 ? std::pow(ann.a, 1 - f.mu) : kInf;
                const double end = f.c7 == 0 ? f.c8 : f.c8 - f.c7 * sa;
                if (end < -1e-12 * (f.c8 + (f.c7 == 0 ? 0.0 : f.c7 * sa)))
                    fail("minus family d is not positive down to the inner radius");
            } else {
                fail("sigma_k null family carries no cone constraint; check it with sigma_k_residual");
            }
        },
        fam.variant());
}

}  // namespace detail

inline FamilyReport validate_family(const ConeProfile& p, const RadialFamily& fam, const Annulus& ann,
                                    int grid, double tol = kValidateTol) {
    require(grid >= 2, "validate_family: grid must be >= 2");
    FamilyReport rep;
    if (fam.n() != p.n) {
        rep.pass = false;
        rep.problems.push_back("family dimension differs from cone dimension");
        return rep;
    }
    detail::constant_constraints(p, fam, ann, rep);
    const auto [lo, hi] = sampling_window(ann);
    for (double r : log_grid(lo, hi, grid, false)) {
        RadialEigenvalues e;
        try {
            e = radial_eigs(eval_family(fam, r));
        } catch (const std::exception&) {
            rep.pass = false;
            ++rep.violation_count;
            rep.problems.push_back("family not positive at r=" + std::to_string(r));
            continue;
        }
        const Branch b = branch_classify(p, e, tol);
        switch (b) {
            case Branch::Null: ++rep.null_count; break;
            case Branch::PlusBranch: ++rep.plus_count; break;
            case Branch::MinusBranch: ++rep.minus_count; break;
            case Branch::Violation: ++rep.violation_count; break;
        }
        if (b != Branch::Null) {
            const double res = branch_residual(p, e);
            if (res > rep.max_residual) {
                rep.max_residual = res;
                rep.worst_radius = r;
            }
        }
    }
    if (rep.violation_count > 0) {
        rep.pass = false;
        rep.problems.push_back(std::to_string(rep.violation_count) + " grid points violate the branch equations");
    }
    return rep;
}

inline FamilyReport validate_family(const Cone& cone, const RadialFamily& fam, const Annulus& ann, int grid,
                                    double tol = kValidateTol) {
    return validate_family(cone_profile(cone), fam, ann, grid, tol);
}

// sigma_k of the eigenvalues (V, v, ..., v) divided by sigma_k of their absolute values.
inline double sigma_k_residual(int n, int k, const RadialEigenvalues& e) {
    const double top = std::max(std::abs(e.V), std::abs(e.v));
    if (top == 0) return 0.0;
    std::vector<double> lam(static_cast<std::size_t>(n), e.v / top);
    lam[0] = e.V / top;
    return std::abs(sigma_k(EigenTuple(lam), k)) / binomial(n, k);
}

struct Infeasible {
    std::string side;  // "lower": ln(alpha/beta) < 0, "upper": above (n-2) ln(b/a)
    double ln_ratio = 0;
    double bound = 0;
    std::string message() const {
        if (side == "lower")
            return "infeasible: ln(alpha/beta) = " + std::to_string(ln_ratio) + " < 0";
        return "infeasible: ln(alpha/beta) = " + std::to_string(ln_ratio) + " > (n-2) ln(b/a) = " +
               std::to_string(bound);
    }
};

using BvpResult = std::variant<RadialFamily, Infeasible>;

inline constexpr double kFeasibilitySlack = 1e-12;

namespace detail {

// Constants (A, B) of w = A r^(1-mu) + B through w(a) = wa, w(b) = wb.
inline std::pair<double, double> linear_fit(double a, double b, double wa, double wb, double mu) {
    const double sa = std::pow(a, 1 - mu), sb = std::pow(b, 1 - mu);
    const double A = (wa - wb) / (sa - sb);
    const double B = (wb * sa - wa * sb) / (sa - sb);
    return {A, B};
}

inline double clamp_tiny(double x, double tol) { return (x < 0 && x > -tol) ? 0.0 : x; }

// Maps w = A r^(1-mu) + B with A * B <= 0 onto family (c) or (d).
inline RadialFamily minus_from_constants(int n, double A, double B, double mu, double tol, double smax) {
    A = clamp_tiny(A, tol / smax);
    B = clamp_tiny(B, tol);
    if (A > 0) {
        if (B > tol) throw InvariantViolation("bvp: minus substitution gave v > 0");
        return RadialFamily(n, MinusFamilyC{A, std::max(0.0, -B), mu});
    }
    return RadialFamily(n, MinusFamilyD{-A, B, mu});
}

}  // namespace detail

inline BvpResult solve_radial_bvp(const ConeProfile& p, const Annulus& ann, double alpha, double beta) {
    require(ann.finite(), "bvp: annulus must satisfy 0 < a < b < inf");
    require(alpha > 0 && beta > 0 && std::isfinite(alpha) && std::isfinite(beta), "bvp: boundary values must be positive");
    const int n = p.n;
    const double a = ann.a, b = ann.b;
    const double L = std::log(alpha / beta);
    const double U = (n - 2) * std::log(b / a);
    const double slack = kFeasibilitySlack * std::max(1.0, U);
    const bool plus_ok = L >= -slack && L <= U + slack;

    if (!plus_ok && p.axis_on_boundary) {
        if (L < 0) return Infeasible{"lower", L, 0.0};
        return Infeasible{"upper", L, U};
    }
    if (plus_ok) {
        if (is_log_exponent(p.mu_plus)) {
            const double c2 = std::clamp(L / std::log(b / a), 0.0, static_cast<double>(n - 2));
            return RadialFamily(n, PowerLaw{alpha * std::pow(a, c2), c2});
        }
        const double e = (p.mu_plus - 1) / (n - 2);
        const double wa = std::pow(alpha, e), wb = std::pow(beta, e);
        auto [A, B] = detail::linear_fit(a, b, wa, wb, p.mu_plus);
        A = std::max(0.0, A);
        B = std::max(0.0, B);
        if (std::abs(L) <= slack) A = 0.0, B = wb;
        if (std::abs(L - U) <= slack) B = 0.0, A = wb / std::pow(b, 1 - p.mu_plus);
        return RadialFamily(n, PlusFamily{A, B, p.mu_plus});
    }
    const double e = (p.mu_minus - 1) / (n - 2);
    const double wa = std::pow(alpha, e), wb = std::pow(beta, e);
    const auto [A, B] = detail::linear_fit(a, b, wa, wb, p.mu_minus);
    const double smax = std::max(std::pow(a, 1 - p.mu_minus), std::pow(b, 1 - p.mu_minus));
    return detail::minus_from_constants(n, A, B, p.mu_minus, 1e-12 * std::max(wa, wb), smax);
}

inline BvpResult solve_radial_bvp(const Cone& cone, const Annulus& ann, double alpha, double beta) {
    return solve_radial_bvp(cone_profile(cone), ann, alpha, beta);
}

namespace detail {

struct ShotConstants {
    double X = 0, Y = 0;
};

inline ShotConstants shoot_log(double a, double b, double alpha, double beta) {
    // u = exp(Y) r^(-X)
    auto inner = [&](double X) {
        auto f = [&](double Y) { return Y - X * std::log(b) - std::log(beta); };
        double lo = -1, hi = 1;
        while (f(lo) > 0) lo = 2 * lo - 1;
        while (f(hi) < 0) hi = 2 * hi + 1;
        return bisect_root(f, lo, hi);
    };
    auto g = [&](double X) { return inner(X) - X * std::log(a) - std::log(alpha); };
    double lo = -1, hi = 1;
    while (g(lo) > 0 && lo > -1e6) lo *= 2;
    while (g(hi) < 0 && hi < 1e6) hi *= 2;
    const double X = bisect_root(g, lo, hi);
    return {X, inner(X)};
}

inline ShotConstants shoot_power(int n, double mu, double a, double b, double alpha, double beta) {
    const double q = exponent_q(n, mu);
    const double sa = std::pow(a, 1 - mu), sb = std::pow(b, 1 - mu);
    constexpr double big = 1e300;
    auto value = [&](double base) { return base > 0 ? std::pow(base, q) : (q > 0 ? 0.0 : big); };
    auto inner = [&](double X) {
        auto f = [&](double Y) { return value(X * sb + Y) - beta; };
        const double lo = -X * sb;
        double step = std::max(1.0, std::abs(lo));
        double hi = lo + step;
        const bool up = q > 0;
        while ((up ? f(hi) < 0 : f(hi) > 0) && step < 1e300) {
            step *= 2;
            hi = lo + step;
        }
        return bisect_root(f, lo, hi);
    };
    auto g = [&](double X) { return value(X * sa + inner(X)) - alpha; };
    const double g0 = g(0.0);
    if (g0 == 0.0) return {0.0, inner(0.0)};
    double step = 1e-3 * std::max(1.0, std::abs(std::pow(beta, 1 / q)) / std::max(sa, sb));
    double lo = 0, hi = 0;
    for (; step < 1e300; step *= 2) {
        if ((g(step) > 0) != (g0 > 0)) {
            lo = 0, hi = step;
            break;
        }
        if ((g(-step) > 0) != (g0 > 0)) {
            lo = -step, hi = 0;
            break;
        }
    }
    if (lo == hi) throw InvariantViolation("bvp shooting: could not bracket the outer constant");
    const double X = bisect_root(g, lo, hi);
    return {X, inner(X)};
}

}  // namespace detail

// Second solver: nested bisection on the family constants against the boundary values.
inline BvpResult shoot_radial_bvp(const ConeProfile& p, const Annulus& ann, double alpha, double beta) {
    require(ann.finite(), "bvp: annulus must satisfy 0 < a < b < inf");
    require(alpha > 0 && beta > 0, "bvp: boundary values must be positive");
    const int n = p.n;
    const double a = ann.a, b = ann.b;
    const double sign_tol = 1e-9;
    if (is_log_exponent(p.mu_plus)) {
        const auto s = detail::shoot_log(a, b, alpha, beta);
        if (s.X >= -sign_tol && s.X <= (n - 2) + sign_tol)
            return RadialFamily(n, PowerLaw{std::exp(s.Y), std::clamp(s.X, 0.0, static_cast<double>(n - 2))});
    } else {
        const auto s = detail::shoot_power(n, p.mu_plus, a, b, alpha, beta);
        const double scale = std::max({std::abs(s.X) * std::max(std::pow(a, 1 - p.mu_plus), std::pow(b, 1 - p.mu_plus)),
                                       std::abs(s.Y), 1e-300});
        if (s.X >= -sign_tol * scale && s.Y >= -sign_tol * scale)
            return RadialFamily(n, PlusFamily{std::max(0.0, s.X), std::max(0.0, s.Y), p.mu_plus});
    }
    const double L = std::log(alpha / beta);
    if (p.axis_on_boundary) {
        if (L < 0) return Infeasible{"lower", L, 0.0};
        return Infeasible{"upper", L, (n - 2) * std::log(b / a)};
    }
    const auto s = detail::shoot_power(n, p.mu_minus, a, b, alpha, beta);
    const double smax = std::max(std::pow(a, 1 - p.mu_minus), std::pow(b, 1 - p.mu_minus));
    const double scale = std::max(std::abs(s.X) * smax, std::abs(s.Y));
    return detail::minus_from_constants(n, s.X, s.Y, p.mu_minus, sign_tol * scale, smax);
}

// Psi quotient relative to the sample at R0, for the sample radii below R0.
inline std::vector<std::pair<double, double>> psi_profile(std::span<const std::pair<double, double>> samples,
                                                          double R0, double mu_plus, int n) {
    require(n >= 3, "psi_profile: dimension must be >= 3");
    std::vector<std::pair<double, double>> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i].first == s[i - 1].first) throw ParameterError("psi_profile: duplicate radius");
    double u0 = -1;
    for (const auto& [r, u] : s) {
        require(r > 0 && u > 0, "psi_profile: samples must be positive");
        if (r == R0) u0 = u;
    }
    require(u0 > 0, "psi_profile: R0 is not a sample radius");
    std::vector<std::pair<double, double>> out;
    const bool log_case = is_log_exponent(mu_plus);
    const double e = (mu_plus - 1) / (n - 2);
    for (const auto& [r, u] : s) {
        if (r >= R0) break;
        double psi;
        if (log_case)
            psi = (std::log(u) - std::log(u0)) / (std::log(R0) - std::log(r));
        else
            psi = (std::pow(u, e) - std::pow(u0, e)) / (std::pow(r, 1 - mu_plus) - std::pow(R0, 1 - mu_plus));
        out.emplace_back(r, psi);
    }
    return out;
}

// Test barriers on [c, d] built from the boundary values of a supersolution.
struct Xi {
    int n;
    double c, d, uc, eps, mu;
};
struct XiHat {
    int n;
    double c, d, ud, m, mu;
};
using TestBarrier = std::variant<Xi, XiHat>;

inline double log_slope(double uc, double ud, double c, double d) {
    return (std::log(uc) - std::log(ud)) / (std::log(d) - std::log(c));
}

inline Xi make_xi(int n, double c, double d, double uc, double eps, double mu) {
    require(n >= 3 && c > 0 && c < d && uc > 0 && mu > 1 && std::isfinite(eps), "xi barrier: bad parameters");
    return Xi{n, c, d, uc, eps, mu};
}
// Xi through (c, uc) and (d, ud).
inline Xi anchored_xi(int n, double c, double d, double uc, double ud, double mu) {
    return make_xi(n, c, d, uc, log_slope(uc, ud, c, d) - (n - 2), mu);
}
inline XiHat anchored_xi_hat(int n, double c, double d, double uc, double ud, double mu) {
    require(n >= 3 && c > 0 && c < d && uc > 0 && ud > 0 && mu > 1, "xi-hat barrier: bad parameters");
    return XiHat{n, c, d, ud, log_slope(uc, ud, c, d), mu};
}

inline RadialJet barrier_eval(const TestBarrier& bar, double r) {
    return std::visit(
        [&](const auto& x) -> RadialJet {
            using T = std::decay_t<decltype(x)>;
            if (!(r >= x.c && r <= x.d)) throw DomainError("barrier_eval: r outside [c, d]");
            const double D = std::log(x.d / x.c);
            double lnu, k, dk;  // ln u, r u'/u, d(r u'/u)/dr
            if constexpr (std::is_same_v<T, Xi>) {
                const double L = std::log(r / x.c);
                const double Ln = L / D;
                lnu = std::log(x.uc) + (x.n - 2) * std::log(x.c / r) - x.eps * std::pow(Ln, x.mu) * D;
                k = -(x.n - 2) - x.eps * x.mu * std::pow(Ln, x.mu - 1);
                dk = -x.eps * x.mu * (x.mu - 1) * std::pow(Ln, x.mu - 2) / (D * r);
            } else {
                const double M = std::log(x.d / r);
                const double Mn = M / D;
                lnu = std::log(x.ud) + x.m * std::pow(Mn, x.mu) * D;
                k = -x.m * x.mu * std::pow(Mn, x.mu - 1);
                dk = x.m * x.mu * (x.mu - 1) * std::pow(Mn, x.mu - 2) / (D * r);
            }
            const double u = std::exp(lnu);
            const double up = u * k / r;
            const double upp = u * (k * k - k + r * dk) / (r * r);
            return RadialJet(x.n, r, u, up, upp);
        },
        bar);
}

}  // namespace ccl
