#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ccl/radial.hpp"

namespace ccl {

// Positive samples u(r_i) on strictly increasing radii.
class RadialProfile {
public:
    RadialProfile(std::vector<double> radii, std::vector<double> values, int n)
        : r_(std::move(radii)), u_(std::move(values)), n_(n) {
        require(n >= 3, "profile: dimension must be >= 3");
        require(r_.size() == u_.size(), "profile: radii and values differ in length");
        require(!r_.empty(), "profile: no samples");
        for (std::size_t i = 0; i < r_.size(); ++i) {
            require(r_[i] > 0 && std::isfinite(r_[i]), "profile: radii must be positive");
            require(u_[i] > 0 && std::isfinite(u_[i]), "profile: values must be positive");
            if (i > 0) require(r_[i] > r_[i - 1], "profile: radii must be strictly increasing");
        }
    }

    static RadialProfile sample(const RadialFamily& fam, const std::vector<double>& radii) {
        std::vector<double> u(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) u[i] = family_value(fam, radii[i]);
        return RadialProfile(radii, std::move(u), fam.n());
    }

    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& values() const { return u_; }
    int n() const { return n_; }
    std::size_t size() const { return r_.size(); }

private:
    std::vector<double> r_, u_;
    int n_;
};

// Pointwise minimum of profiles on a common grid.
inline RadialProfile pointwise_min(const std::vector<RadialProfile>& ps) {
    require(!ps.empty(), "pointwise_min: no profiles");
    std::vector<double> u = ps.front().values();
    for (const auto& p : ps) {
        require(p.radii() == ps.front().radii(), "pointwise_min: grid mismatch");
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::min(u[i], p.values()[i]);
    }
    return RadialProfile(ps.front().radii(), std::move(u), ps.front().n());
}

struct ThreePointFit {
    bool ok = false;
    double limit = 0, coef = 0, rate = 0;
};

// Differences below this relative size are rounding noise in sampled data.
inline constexpr double kFlatTol = 1e-13;

// Fits f = limit + coef * r^rate through three samples, rate > 0.
inline ThreePointFit three_point_fit(double r1, double r2, double r3, double f1, double f2, double f3) {
    ThreePointFit fit;
    const double d12 = f2 - f1, d23 = f3 - f2;
    const double scale = std::max({std::abs(f1), std::abs(f2), std::abs(f3)});
    if (std::abs(d12) <= kFlatTol * scale && std::abs(d23) <= kFlatTol * scale) {
        fit.ok = true;
        fit.limit = f1;
        fit.rate = kInf;
        return fit;
    }
    const double rho = d12 / d23;
    if (!(rho > 0) || !std::isfinite(rho)) return fit;
    auto h = [&](double s) {
        return (std::pow(r2 / r3, s) - std::pow(r1 / r3, s)) / (1 - std::pow(r2 / r3, s));
    };
    double lo = 1e-8, hi = 64;
    if (!(h(lo) > rho && h(hi) < rho)) return fit;
    const double s = bisect_root([&](double x) { return h(x) - rho; }, lo, hi);
    const double c = d12 / (std::pow(r2, s) - std::pow(r1, s));
    fit.ok = true;
    fit.rate = s;
    fit.coef = c;
    fit.limit = f1 - c * std::pow(r1, s);
    return fit;
}

namespace detail {

inline std::size_t nearest_log(const std::vector<double>& r, double target, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i)
        if (std::abs(std::log(r[i] / target)) < std::abs(std::log(r[best] / target))) best = i;
    return best;
}

// Three-point fit on the samples within [r_start, 10 r_start].
inline ThreePointFit decade_fit(const std::vector<double>& r, const std::vector<double>& f, std::size_t start) {
    std::size_t end = start;
    while (end + 1 < r.size() && r[end + 1] <= 10 * r[start] * (1 + 1e-12)) ++end;
    if (end < start + 2) return {};
    const std::size_t mid = nearest_log(r, std::sqrt(r[start] * r[end]), start + 1, end - 1);
    return three_point_fit(r[start], r[mid], r[end], f[start], f[mid], f[end]);
}

}  // namespace detail

inline constexpr double kLimitResidualTol = 1e-6;

struct LimitEstimate {
    double value = 0;
    double residual = 0;
};

// Limit of r^(n-2) u as r -> 0 from the innermost decade of samples.
inline LimitEstimate singularity_coefficient(const RadialProfile& p) {
    const auto& r = p.radii();
    require(r.front() <= 1e-2 * r.back(), "singularity_coefficient: samples must span two decades");
    std::vector<double> f(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) f[i] = std::pow(r[i], p.n() - 2) * p.values()[i];

    const auto inner = detail::decade_fit(r, f, 0);
    std::size_t shifted = 0;
    while (shifted + 1 < r.size() && r[shifted] < std::sqrt(10.0) * r.front()) ++shifted;
    const auto outer = detail::decade_fit(r, f, shifted);

    std::vector<double> tail(f.begin(), f.begin() + std::min<std::size_t>(f.size(), 6));
    if (!inner.ok || !outer.ok) throw DiagnosticError("singularity_coefficient: tail is not monotone-convergent", tail);
    double fscale = 0;
    for (std::size_t i = 0; i <= shifted + 2 && i < f.size(); ++i) fscale = std::max(fscale, std::abs(f[i]));
    const double residual = std::abs(inner.limit - outer.limit) / std::max(fscale, 1e-300);
    if (residual > kLimitResidualTol)
        throw DiagnosticError("singularity_coefficient: extrapolation residual " + std::to_string(residual), tail);
    return {std::max(0.0, inner.limit), residual};
}

enum class BocherCase { MuPlusGt1, MuPlusEq1, MuPlusLt1 };

inline const char* to_string(BocherCase c) {
    switch (c) {
        case BocherCase::MuPlusGt1: return "mu_plus_gt_1";
        case BocherCase::MuPlusEq1: return "mu_plus_eq_1";
        case BocherCase::MuPlusLt1: return "mu_plus_lt_1";
    }
    return "?";
}

inline constexpr double kEnvelopeTol = 1e-9;

struct BocherDecomposition {
    BocherCase kind = BocherCase::MuPlusGt1;
    double a = 0;
    double a_inf = 0;  // min over samples of r^(n-2) u
    std::optional<double> alpha;
    std::vector<double> ring_w;
    std::vector<double> ring_scale;  // magnitude of the terms ring_w is computed from
    bool vanishing = false;          // ring_w == 0
    bool positive = false;           // min ring_w > 0
    bool envelope = false;           // ring_w(r) between ring_w at larger radii
    double max_deviation = 0;        // max |ring_w_i - ring_w_j| / scale, i < j
    std::vector<std::string> problems;

    bool dichotomy() const { return vanishing != positive && envelope; }
};

namespace detail {

inline void envelope_check(BocherDecomposition& d, double tol) {
    const auto& w = d.ring_w;
    const auto& s = d.ring_scale;
    double dev = 0;
    // radial data: the sphere max and min coincide, so the envelope pins ring_w to its outer value
    for (std::size_t j = 1; j < w.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) dev = std::max(dev, std::abs(w[i] - w[j]) / std::max(s[i], s[j]));
    d.max_deviation = dev;
    d.envelope = dev <= tol;
    bool zero = true, nonnegative = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (std::abs(w[i]) > tol * s[i]) zero = false;
        if (w[i] < -tol * s[i]) nonnegative = false;
    }
    d.vanishing = zero;
    d.positive = !zero && nonnegative;
    if (!d.envelope) d.problems.push_back("ring term leaves its sphere envelope");
}

}  // namespace detail

inline BocherDecomposition bocher_decompose(const ConeProfile& cone, const RadialProfile& p,
                                            double tol = kEnvelopeTol) {
    require(cone.n == p.n(), "bocher_decompose: dimension mismatch");
    require(p.size() >= 3, "bocher_decompose: need at least three samples");
    const int n = p.n();
    const auto& r = p.radii();
    const auto& u = p.values();
    BocherDecomposition d;
    d.a_inf = kInf;
    for (std::size_t i = 0; i < r.size(); ++i) d.a_inf = std::min(d.a_inf, std::pow(r[i], n - 2) * u[i]);
    const double mu = cone.mu_plus;

    if (is_log_exponent(mu)) {
        d.kind = BocherCase::MuPlusEq1;
        const double alpha = -(std::log(u[1]) - std::log(u[0])) / (std::log(r[1]) - std::log(r[0]));
        d.alpha = alpha;
        for (std::size_t i = 0; i < r.size(); ++i) {
            d.ring_w.push_back(std::log(u[i]) + alpha * std::log(r[i]));
            d.ring_scale.push_back(std::abs(std::log(u[i])) + std::abs(alpha * std::log(r[i])) + 1);
        }
        if (alpha < -1e-6 || alpha > n - 2 + 1e-6) d.problems.push_back("log exponent outside [0, n-2]");
        d.a = alpha >= n - 2 - 1e-9 ? std::exp(d.ring_w.front()) : 0.0;
        detail::envelope_check(d, tol);
        // the ring term is defined up to the log; vanishing is not a separate branch here
        d.vanishing = false;
        d.positive = true;
        return d;
    }
    if (mu < 1) {
        d.kind = BocherCase::MuPlusLt1;
        d.a = singularity_coefficient(p).value;
        return d;
    }

    d.kind = BocherCase::MuPlusGt1;
    const double e = (mu - 1) / (n - 2);
    // r^(mu-1) u^e is affine in t = r^(mu-1) for exact solutions
    const double t0 = std::pow(r[0], mu - 1), t1 = std::pow(r[1], mu - 1);
    const double g0 = t0 * std::pow(u[0], e), g1 = t1 * std::pow(u[1], e);
    const double ap = std::max(0.0, g0 - t0 * (g1 - g0) / (t1 - t0));
    d.a = std::pow(ap, 1 / e);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double ue = std::pow(u[i], e);
        d.ring_w.push_back(ue - ap * std::pow(r[i], 1 - mu));
        d.ring_scale.push_back(ue);
    }
    if (d.a > d.a_inf * (1 + 1e-9)) d.problems.push_back("limit exceeds the infimum of r^(n-2) u");
    detail::envelope_check(d, tol);
    return d;
}

// Rebuilds u from the decomposition; returns max relative error.
inline double bocher_reassembly_error(const ConeProfile& cone, const RadialProfile& p, const BocherDecomposition& d) {
    const int n = p.n();
    double err = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = p.radii()[i];
        double u;
        if (d.kind == BocherCase::MuPlusEq1)
            u = std::exp(-*d.alpha * std::log(r) + d.ring_w[i]);
        else if (d.kind == BocherCase::MuPlusGt1) {
            const double e = (cone.mu_plus - 1) / (n - 2);
            u = std::pow(std::pow(d.a, e) * std::pow(r, 1 - cone.mu_plus) + d.ring_w[i], 1 / e);
        } else
            return kInf;
        err = std::max(err, std::abs(u - p.values()[i]) / p.values()[i]);
    }
    return err;
}

// Log-log slope of |w - w(0+)| near 0 for w = u^((mu-1)/(n-2)); +inf for a constant modulus.
inline double holder_exponent_fit(const RadialProfile& p, double mu_plus) {
    require(mu_plus < 1, "holder_exponent_fit: needs mu_plus < 1");
    const int n = p.n();
    const auto& r = p.radii();
    const double e = (mu_plus - 1) / (n - 2);
    std::vector<double> w(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::pow(p.values()[i], e);
    const auto fit = detail::decade_fit(r, w, 0);
    if (fit.ok && std::isinf(fit.rate)) return kInf;
    if (!fit.ok) throw ParameterError("holder_exponent_fit: cannot extrapolate w(0+)");
    std::vector<double> x, y;
    const double wscale = std::abs(fit.limit) + 1e-300;
    for (std::size_t i = 0; i < r.size() && r[i] <= 100 * r.front() * (1 + 1e-12); ++i) {
        const double m = std::abs(w[i] - fit.limit);
        if (m <= 1e-13 * wscale) continue;
        x.push_back(std::log(r[i]));
        y.push_back(std::log(m));
    }
    if (x.size() < 4) {
        if (x.empty()) return kInf;
        throw ParameterError("holder_exponent_fit: fewer than four usable points");
    }
    const double k = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

struct HarnackReport {
    double sup_over_inf = 1;
    double max_scaled_log_gradient = 0;
    double witness_radius = 0;
    std::size_t samples = 0;
};

inline HarnackReport harnack_report(const RadialProfile& p, double epsilon) {
    require(epsilon > 0 && epsilon < 1, "harnack_report: need 0 < epsilon < 1");
    HarnackReport h;
    double sup = 0, inf = kInf;
    const auto& r = p.radii();
    const auto& u = p.values();
    for (std::size_t i = 0; i < r.size() && r[i] <= 1 - epsilon; ++i) {
        sup = std::max(sup, u[i]);
        inf = std::min(inf, u[i]);
        ++h.samples;
        if (i > 0) {
            const double g = std::abs((std::log(u[i]) - std::log(u[i - 1])) / (std::log(r[i]) - std::log(r[i - 1])));
            if (g > h.max_scaled_log_gradient) {
                h.max_scaled_log_gradient = g;
                h.witness_radius = r[i];
            }
        }
    }
    if (h.samples > 0) h.sup_over_inf = sup / inf;
    return h;
}

struct ScanReport {
    std::string check;
    bool pass = true;
    double witness_radius = 0;
    double lhs = 0;
    double rhs = 0;
};

inline constexpr double kOrderSlack = 1e-12;

// sub <= super at every sample inside the closed annulus.
inline ScanReport comparison_scan(const RadialProfile& sub, const RadialProfile& super, const Annulus& ann) {
    if (sub.radii() != super.radii()) throw ParameterError("comparison_scan: grid mismatch");
    ScanReport rep{"comparison", true, 0, 0, 0};
    double worst = -kInf;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const double r = sub.radii()[i];
        if (r < ann.a || r > ann.b) continue;
        const double lhs = sub.values()[i], rhs = super.values()[i];
        const double excess = (lhs - rhs) / std::max(lhs, rhs);
        if (excess > worst) {
            worst = excess;
            rep.witness_radius = r;
            rep.lhs = lhs;
            rep.rhs = rhs;
        }
        if (excess > kOrderSlack) rep.pass = false;
    }
    return rep;
}

// With u <= super at the outer radius and u >= super at radius d, super <= u below d.
inline ScanReport shooting_scan(const RadialProfile& solution, const RadialProfile& super, double d) {
    if (solution.radii() != super.radii()) throw ParameterError("shooting_scan: grid mismatch");
    ScanReport rep{"shooting", true, 0, 0, 0};
    const auto& r = solution.radii();
    const auto& u = solution.values();
    const auto& s = super.values();
    const std::size_t last = r.size() - 1;
    auto pos = std::find(r.begin(), r.end(), d);
    if (pos == r.end()) throw ParameterError("shooting_scan: d is not a sample radius");
    const std::size_t id = static_cast<std::size_t>(pos - r.begin());
    const bool outer_ok = u[last] <= s[last] * (1 + kOrderSlack);
    const bool inner_ok = u[id] >= s[id] * (1 - kOrderSlack);
    if (!outer_ok || !inner_ok) {
        rep.pass = false;
        rep.check = "shooting_precondition";
        rep.witness_radius = outer_ok ? d : r[last];
        rep.lhs = outer_ok ? s[id] : u[last];
        rep.rhs = outer_ok ? u[id] : s[last];
        return rep;
    }
    double worst = -kInf;
    for (std::size_t i = 0; i < id; ++i) {
        const double excess = (s[i] - u[i]) / std::max(s[i], u[i]);
        if (excess > worst) {
            worst = excess;
            rep.witness_radius = r[i];
            rep.lhs = s[i];
            rep.rhs = u[i];
        }
        if (excess > kOrderSlack) rep.pass = false;
    }
    return rep;
}

// u non-increasing and r^(n-2) u non-decreasing.
inline ScanReport supersolution_bounds(const RadialProfile& p) {
    ScanReport rep{"supersolution_bounds", true, 0, 0, 0};
    const auto& r = p.radii();
    const auto& u = p.values();
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (u[i] > u[i - 1] * (1 + kOrderSlack)) {
            rep = {"non_increasing", false, r[i], u[i], u[i - 1]};
            return rep;
        }
        const double f0 = std::pow(r[i - 1], p.n() - 2) * u[i - 1];
        const double f1 = std::pow(r[i], p.n() - 2) * u[i];
        if (f1 < f0 * (1 - kOrderSlack)) {
            rep = {"scaled_non_decreasing", false, r[i], f1, f0};
            return rep;
        }
    }
    return rep;
}

inline constexpr double kMinusBoundTol = 1e-9;

// Lower bound by the minus-exponent profile through the limit of r^(n-2) u, shifted by the
// largest remainder a^e r^(1-mu) - u^e with e = (mu-1)/(n-2).
inline ScanReport minus_lower_bound(const RadialProfile& p, double mu_minus) {
    require(std::isfinite(mu_minus), "minus_lower_bound: needs a finite exponent");
    const int n = p.n();
    const double a = singularity_coefficient(p).value;
    const double e = (mu_minus - 1) / (n - 2);
    const double ae = std::pow(a, e);
    double wmax = -kInf;
    for (std::size_t i = 0; i < p.size(); ++i)
        wmax = std::max(wmax, ae * std::pow(p.radii()[i], 1 - mu_minus) - std::pow(p.values()[i], e));
    ScanReport rep{"minus_lower_bound", true, 0, 0, 0};
    double worst = -kInf;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = p.radii()[i];
        const double base = ae * std::pow(r, 1 - mu_minus) - wmax;
        const double bound = base > 0 ? std::pow(base, 1 / e) : 0.0;
        const double deficit = (bound - p.values()[i]) / p.values()[i];
        if (deficit > worst) {
            worst = deficit;
            rep.witness_radius = r;
            rep.lhs = p.values()[i];
            rep.rhs = bound;
        }
        if (deficit > kMinusBoundTol) rep.pass = false;
    }
    return rep;
}

}  // namespace ccl
