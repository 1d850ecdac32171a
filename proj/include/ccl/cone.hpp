#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ccl/bisect.hpp"
#include "ccl/errors.hpp"
#include "ccl/sigma.hpp"

namespace ccl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Cone;

struct GammaK {
    int n;
    int k;
};
struct SigmaTheta {
    int n;
    double theta;
};
struct UGammaPlus {
    int n;
    double mu;
};
struct LGammaPlus {
    int n;
    double mu;
};
struct UGammaMinus {
    int n;
    double mu;  // may be +inf
};
struct LGammaMinus {
    int n;
    double mu;  // may be +inf
};
struct GammaOne {
    int n;
};
struct GammaT {
    std::shared_ptr<const Cone> base;
    double t;
};

enum class PointClass { Interior, Boundary, Exterior };

inline const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Interior: return "interior";
        case PointClass::Boundary: return "boundary";
        case PointClass::Exterior: return "exterior";
    }
    return "?";
}

// Open convex symmetric cone given by a signed depth g with cone = {g > 0}.
class Cone {
public:
    using Variant = std::variant<GammaK, SigmaTheta, UGammaPlus, LGammaPlus, UGammaMinus,
                                 LGammaMinus, GammaOne, GammaT>;

    static Cone gamma_k(int n, int k) {
        check_n(n);
        require(k >= 1 && k <= n, "gamma_k: need 1 <= k <= n");
        return Cone(GammaK{n, k}, n);
    }
    static Cone sigma_theta(int n, double theta) {
        check_n(n);
        require(std::isfinite(theta) && theta >= 0, "sigma_theta: need finite theta >= 0");
        return Cone(SigmaTheta{n, theta}, n);
    }
    static Cone u_gamma_plus(int n, double mu) {
        check_n(n);
        require(mu > -1 && mu < n - 1, "u_gamma_plus: need -1 < mu < n-1");
        return Cone(UGammaPlus{n, mu}, n);
    }
    static Cone l_gamma_plus(int n, double mu) {
        check_n(n);
        require(mu > -1 && mu < n - 1, "l_gamma_plus: need -1 < mu < n-1");
        return Cone(LGammaPlus{n, mu}, n);
    }
    static Cone u_gamma_minus(int n, double mu) {
        check_n(n);
        require(mu > n - 1, "u_gamma_minus: need mu > n-1");
        return Cone(UGammaMinus{n, mu}, n);
    }
    static Cone l_gamma_minus(int n, double mu) {
        check_n(n);
        require(mu > n - 1, "l_gamma_minus: need mu > n-1");
        return Cone(LGammaMinus{n, mu}, n);
    }
    static Cone gamma_one(int n) {
        check_n(n);
        return Cone(GammaOne{n}, n);
    }
    static Cone gamma_t(const Cone& base, double t) {
        require(t >= 0 && t <= 1, "gamma_t: need 0 <= t <= 1");
        return Cone(GammaT{std::make_shared<const Cone>(base), t}, base.n());
    }

    int n() const { return n_; }
    const Variant& variant() const { return v_; }

    double depth(const EigenTuple& lambda) const {
        if (lambda.n() != n_)
            throw ParameterError("cone_depth: dimension mismatch (" + std::to_string(lambda.n()) +
                                 " vs " + std::to_string(n_) + ")");
        return std::visit([&](const auto& c) { return depth_of(c, lambda); }, v_);
    }

    // Whether the cone contains the positive orthant, i.e. lies between it and the half-space.
    bool sandwiched() const {
        return std::visit(
            [&](const auto& c) -> bool {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, UGammaPlus>) return c.mu >= 0;
                else if constexpr (std::is_same_v<T, LGammaPlus>) return c.mu >= c.n - 2;
                else if constexpr (std::is_same_v<T, GammaT>) return c.base->sandwiched();
                else return true;
            },
            v_);
    }

    std::string describe() const {
        std::ostringstream os;
        os.precision(17);
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, GammaK>) os << "gamma_k(n=" << c.n << ",k=" << c.k << ")";
                else if constexpr (std::is_same_v<T, SigmaTheta>) os << "sigma_theta(n=" << c.n << ",theta=" << c.theta << ")";
                else if constexpr (std::is_same_v<T, UGammaPlus>) os << "u_gamma_plus(n=" << c.n << ",mu=" << c.mu << ")";
                else if constexpr (std::is_same_v<T, LGammaPlus>) os << "l_gamma_plus(n=" << c.n << ",mu=" << c.mu << ")";
                else if constexpr (std::is_same_v<T, UGammaMinus>) os << "u_gamma_minus(n=" << c.n << ",mu=" << c.mu << ")";
                else if constexpr (std::is_same_v<T, LGammaMinus>) os << "l_gamma_minus(n=" << c.n << ",mu=" << c.mu << ")";
                else if constexpr (std::is_same_v<T, GammaOne>) os << "gamma_one(n=" << c.n << ")";
                else os << "gamma_t(" << c.base->describe() << ",t=" << c.t << ")";
            },
            v_);
        return os.str();
    }

private:
    Cone(Variant v, int n) : v_(std::move(v)), n_(n) {}

    static void check_n(int n) { require(n >= 3, "cone dimension must be >= 3"); }

    // min_i (lambda_i + c * sum)
    static double min_shift(const EigenTuple& l, double c) {
        const double s = l.sum();
        double g = kInf;
        for (double x : l.entries()) g = std::min(g, x + c * s);
        return g;
    }
    // min_i (c * sum - lambda_i)
    static double min_gap(const EigenTuple& l, double c) {
        const double s = l.sum();
        double g = kInf;
        for (double x : l.entries()) g = std::min(g, c * s - x);
        return g;
    }

    static double depth_of(const GammaK& c, const EigenTuple& l) {
        const auto e = elementary_symmetric<double>(l.entries(), c.k);
        double g = kInf;
        for (int j = 1; j <= c.k; ++j) {
            const double normalized = e[j] / binomial(c.n, j);
            const double root = std::pow(std::abs(normalized), 1.0 / j);
            g = std::min(g, std::copysign(root, normalized));
        }
        return g;
    }
    static double depth_of(const SigmaTheta& c, const EigenTuple& l) { return min_shift(l, c.theta); }
    static double depth_of(const UGammaPlus& c, const EigenTuple& l) {
        return min_shift(l, c.mu / (c.n - 1 - c.mu));
    }
    static double depth_of(const LGammaPlus& c, const EigenTuple& l) {
        return min_gap(l, 1.0 / (c.n - 1 - c.mu));
    }
    static double depth_of(const UGammaMinus& c, const EigenTuple& l) {
        return min_gap(l, std::isinf(c.mu) ? 1.0 : c.mu / (c.mu - (c.n - 1)));
    }
    static double depth_of(const LGammaMinus& c, const EigenTuple& l) {
        return min_shift(l, std::isinf(c.mu) ? 0.0 : 1.0 / (c.mu - (c.n - 1)));
    }
    static double depth_of(const GammaOne&, const EigenTuple& l) { return l.sum(); }
    static double depth_of(const GammaT& c, const EigenTuple& l) {
        const double s = l.sum();
        const int n = l.n();
        if (c.t == 0.0) return s * c.base->depth(EigenTuple(std::vector<double>(n, 1.0)));
        std::vector<double> mixed(l.vec());
        for (double& x : mixed) x = c.t * x + (1 - c.t) * s;
        return c.base->depth(EigenTuple(std::move(mixed)));
    }

    Variant v_;
    int n_;
};

inline double cone_depth(const Cone& cone, const EigenTuple& lambda) { return cone.depth(lambda); }

inline PointClass classify_point(const Cone& cone, const EigenTuple& lambda, double tol) {
    require(tol > 0, "classify_point: tol must be positive");
    const double g = cone.depth(lambda);
    if (std::abs(g) <= tol * (1 + lambda.norm())) return PointClass::Boundary;
    return g > 0 ? PointClass::Interior : PointClass::Exterior;
}

inline bool inside(const Cone& cone, const EigenTuple& lambda) { return cone.depth(lambda) > 0; }

inline constexpr double kExponentTol = 1e-12;
inline constexpr double kMinusHardStop = 1e8;

// The t with (-t, 1, ..., 1) on the boundary.
inline double mu_plus(const Cone& cone) {
    const int n = cone.n();
    auto in = [&](double t) { return inside(cone, EigenTuple::axis(n, -t, 1.0)); };
    const double hi = (n - 1) * (1 + 1e-12) + 1e-12;
    const double t = bisect_predicate(in, -1.0, hi, kExponentTol);
    return std::clamp(t, -1.0, static_cast<double>(n - 1));
}

// The t with (t, -1, ..., -1) on the boundary, or +inf when (1, 0, ..., 0) is not inside.
inline double mu_minus(const Cone& cone) {
    const int n = cone.n();
    if (cone.depth(EigenTuple::axis(n, 1.0, 0.0)) <= 0) return kInf;
    auto out = [&](double t) { return !inside(cone, EigenTuple::axis(n, t, -1.0)); };
    if (out(kMinusHardStop))
        throw InvariantViolation("mu_minus: exceeded hard stop although the axis is inside");
    const double t = bisect_predicate(out, (n - 1) * (1 - 1e-9), kMinusHardStop, kExponentTol);
    return std::max(t, static_cast<double>(n - 1));
}

struct ConeProfile {
    int n = 0;
    double mu_plus = 0;
    double mu_minus = kInf;
    bool axis_on_boundary = true;
};

inline ConeProfile cone_profile(const Cone& cone) {
    ConeProfile p;
    p.n = cone.n();
    p.mu_plus = mu_plus(cone);
    p.mu_minus = mu_minus(cone);
    p.axis_on_boundary = std::isinf(p.mu_minus);
    if (p.axis_on_boundary && p.mu_plus > p.n - 2 + 1e-9)
        throw InvariantViolation("cone_profile: axis on boundary but mu_plus > n-2");
    return p;
}

struct CheckEntry {
    std::string name;
    bool pass = false;
    double lhs = 0;
    double rhs = 0;
    double tol = 0;
};

namespace detail {

inline CheckEntry leq_entry(std::string name, double lhs, double rhs, double tol) {
    bool ok;
    if (std::isinf(rhs) && rhs > 0) ok = true;
    else if (std::isinf(lhs)) ok = false;
    else ok = lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
    return {std::move(name), ok, lhs, rhs, tol};
}

// Pairs (smaller, larger) of cones nested by construction, one of them being `cone`.
inline std::vector<std::pair<Cone, Cone>> nested_pairs(const Cone& cone) {
    const int n = cone.n();
    std::vector<std::pair<Cone, Cone>> out;
    out.emplace_back(cone, Cone::gamma_one(n));
    if (cone.sandwiched()) out.emplace_back(Cone::gamma_k(n, n), cone);
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, GammaK>) {
                if (c.k < n) out.emplace_back(Cone::gamma_k(n, c.k + 1), cone);
                if (c.k > 1) out.emplace_back(cone, Cone::gamma_k(n, c.k - 1));
            } else if constexpr (std::is_same_v<T, SigmaTheta>) {
                out.emplace_back(cone, Cone::sigma_theta(n, 2 * c.theta + 0.1));
            } else if constexpr (std::is_same_v<T, UGammaPlus>) {
                out.emplace_back(cone, Cone::u_gamma_plus(n, 0.5 * (c.mu + n - 1)));
                out.emplace_back(Cone::l_gamma_plus(n, c.mu), cone);
            } else if constexpr (std::is_same_v<T, LGammaPlus>) {
                out.emplace_back(cone, Cone::u_gamma_plus(n, c.mu));
            } else if constexpr (std::is_same_v<T, GammaT>) {
                out.emplace_back(*c.base, cone);
            }
        },
        cone.variant());
    return out;
}

}  // namespace detail

// Monotonicity on nested pairs and the two exponent inequalities.
inline std::vector<CheckEntry> exponent_bound_report(const Cone& cone, double tol = 1e-9) {
    const int n = cone.n();
    const ConeProfile p = cone_profile(cone);
    std::vector<CheckEntry> out;

    const double lower = p.mu_plus > 0 ? (n - 2) + (n - 1) / p.mu_plus : kInf;
    if (std::isinf(lower))
        out.push_back({"d_lower", std::isinf(p.mu_minus), lower, p.mu_minus, tol});
    else
        out.push_back(detail::leq_entry("d_lower", lower, p.mu_minus, tol));

    if (p.mu_plus > n - 2)
        out.push_back(detail::leq_entry("d_upper", p.mu_minus, (n - 1) / (p.mu_plus - (n - 2)), tol));
    else
        out.push_back({"d_upper", true, p.mu_minus, kInf, tol});

    if (p.axis_on_boundary)
        out.push_back(detail::leq_entry("e_axis", p.mu_plus, n - 2, tol));
    else
        out.push_back({"e_axis", true, p.mu_plus, static_cast<double>(n - 1), tol});

    for (const auto& [small, large] : detail::nested_pairs(cone)) {
        const ConeProfile ps = cone_profile(small);
        const ConeProfile pl = cone_profile(large);
        const std::string tag = small.describe() + "<=" + large.describe();
        out.push_back(detail::leq_entry("a_mu_plus:" + tag, ps.mu_plus, pl.mu_plus, tol));
        if (std::isinf(ps.mu_minus))
            out.push_back({"a_mu_minus:" + tag, true, pl.mu_minus, ps.mu_minus, tol});
        else
            out.push_back(detail::leq_entry("a_mu_minus:" + tag, pl.mu_minus, ps.mu_minus, tol));
    }
    return out;
}

inline bool all_pass(const std::vector<CheckEntry>& entries) {
    return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

}  // namespace ccl
