#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "ccl/cone.hpp"
#include "ccl/matrix.hpp"

namespace ccl {

// Second-order data of a positive function at a point.
struct Jet2 {
    double u = 1;
    std::vector<double> grad;
    Matrix hess;

    Jet2(double u_, std::vector<double> g, Matrix h) : u(u_), grad(std::move(g)), hess(std::move(h)) {
        require(u > 0 && std::isfinite(u), "jet: u must be positive");
        require(static_cast<int>(grad.size()) == hess.n(), "jet: gradient/hessian size mismatch");
        require(hess.n() >= 3, "jet: dimension must be >= 3");
        const double s = std::max(hess.frobenius(), 1e-300);
        require(hess.asymmetry() <= 1e-14 * s, "jet: hessian is not symmetric");
    }
    int n() const { return hess.n(); }
};

// Radial second-order data u(r), u'(r), u''(r).
struct RadialJet {
    int n = 3;
    double r = 1;
    double u = 1;
    double uprime = 0;
    double udoubleprime = 0;
    // r u' + (n-2) u and its r-derivative, when known without cancellation
    std::optional<double> deficit, deficit_prime;

    RadialJet() = default;
    RadialJet(int n_, double r_, double u_, double up, double upp)
        : n(n_), r(r_), u(u_), uprime(up), udoubleprime(upp) {
        require(n >= 3, "radial jet: dimension must be >= 3");
        require(r > 0 && std::isfinite(r), "radial jet: r must be positive");
        require(u > 0 && std::isfinite(u), "radial jet: u must be positive");
    }

    RadialJet with_deficit(double d, double dprime) const {
        RadialJet j = *this;
        j.deficit = d;
        j.deficit_prime = dprime;
        return j;
    }

    // Full jet at the point x (|x| must equal r).
    Jet2 embed(std::span<const double> x) const {
        require(static_cast<int>(x.size()) == n, "radial jet: point dimension mismatch");
        std::vector<double> g(static_cast<std::size_t>(n));
        Matrix h(n);
        for (int i = 0; i < n; ++i) g[i] = uprime * x[i] / r;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double xx = x[i] * x[j] / (r * r);
                h(i, j) = udoubleprime * xx + (uprime / r) * ((i == j ? 1.0 : 0.0) - xx);
            }
        return Jet2(u, std::move(g), std::move(h));
    }
    // Full jet at r * e_1.
    Jet2 embed_axis() const {
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        x[0] = r;
        return embed(x);
    }
};

struct RadialEigenvalues {
    double V = 0;  // simple
    double v = 0;  // multiplicity n-1
};

inline Matrix hat_conformal_hessian(const Jet2& jet) {
    const int n = jet.n();
    const double g2 = [&] {
        double s = 0;
        for (double x : jet.grad) s += x * x;
        return s;
    }();
    Matrix a(n);
    const double cg = static_cast<double>(n) / (n - 2);
    const double ci = 1.0 / (n - 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double x = -jet.u * 0.5 * (jet.hess(i, j) + jet.hess(j, i)) + cg * jet.grad[i] * jet.grad[j];
            if (i == j) x -= ci * g2;
            a(i, j) = a(j, i) = x;
        }
    return a;
}

inline Matrix conformal_hessian(const Jet2& jet) {
    const int n = jet.n();
    const double factor = (2.0 / (n - 2)) * std::pow(jet.u, -2.0 * n / (n - 2));
    return hat_conformal_hessian(jet).scaled(factor);
}

inline RadialEigenvalues radial_eigs(const RadialJet& j) {
    const double k = 1.0 / (j.n - 2);
    if (j.deficit && j.deficit_prime) {
        const double d = *j.deficit, dp = *j.deficit_prime;
        return {-j.u * dp / j.r + (j.n - 1) * k * j.uprime * d / j.r, -k * j.uprime * d / j.r};
    }
    return {-j.u * j.udoubleprime + (j.n - 1) * k * j.uprime * j.uprime,
            -j.u * j.uprime / j.r - k * j.uprime * j.uprime};
}

enum class Branch { Null, PlusBranch, MinusBranch, Violation };

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::Null: return "null";
        case Branch::PlusBranch: return "plus";
        case Branch::MinusBranch: return "minus";
        case Branch::Violation: return "violation";
    }
    return "?";
}

inline constexpr double kBranchScaleFloor = 1e-30;

inline double branch_scale(const RadialEigenvalues& e) {
    return std::abs(e.V) + std::abs(e.v) + kBranchScaleFloor;
}

inline Branch branch_classify(const ConeProfile& p, const RadialEigenvalues& e, double tol) {
    require(tol > 0, "branch_classify: tol must be positive");
    const double scale = branch_scale(e);
    if (std::abs(e.v) <= tol * scale) return Branch::Null;
    if (e.v > 0 && std::abs(e.V + p.mu_plus * e.v) <= tol * scale) return Branch::PlusBranch;
    if (e.v < 0 && std::isfinite(p.mu_minus) && std::abs(e.V + p.mu_minus * e.v) <= tol * scale)
        return Branch::MinusBranch;
    return Branch::Violation;
}

// Relative residual of the branch equation, zero for Null points.
inline double branch_residual(const ConeProfile& p, const RadialEigenvalues& e) {
    const double scale = branch_scale(e);
    if (e.v > 0) return std::abs(e.V + p.mu_plus * e.v) / scale;
    if (e.v < 0 && std::isfinite(p.mu_minus)) return std::abs(e.V + p.mu_minus * e.v) / scale;
    if (e.v < 0) return kInf;
    return 0.0;
}

}  // namespace ccl
