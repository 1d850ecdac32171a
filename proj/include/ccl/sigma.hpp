#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ccl/errors.hpp"

namespace ccl {

// Eigenvalue tuple of length n >= 3 with finite entries.
class EigenTuple {
public:
    EigenTuple() = default;
    explicit EigenTuple(std::vector<double> entries) : v_(std::move(entries)) { check(); }
    EigenTuple(std::initializer_list<double> entries) : v_(entries) { check(); }

    // Vector whose first entry is `first` and remaining n-1 entries equal `rest`.
    static EigenTuple axis(int n, double first, double rest) {
        require(n >= 3, "dimension must be >= 3");
        std::vector<double> out(static_cast<std::size_t>(n), rest);
        out[0] = first;
        return EigenTuple(std::move(out));
    }

    int n() const { return static_cast<int>(v_.size()); }
    double operator[](std::size_t i) const { return v_[i]; }
    std::span<const double> entries() const { return v_; }
    const std::vector<double>& vec() const { return v_; }

    double sum() const { return std::accumulate(v_.begin(), v_.end(), 0.0); }
    double norm() const {
        double s = 0.0;
        for (double x : v_) s += x * x;
        return std::sqrt(s);
    }

    EigenTuple scaled(double t) const {
        std::vector<double> out(v_);
        for (double& x : out) x *= t;
        return EigenTuple(std::move(out));
    }

private:
    void check() const {
        require(v_.size() >= 3, "eigen tuple needs n >= 3 entries");
        for (double x : v_) require(std::isfinite(x), "eigen tuple entries must be finite");
    }
    std::vector<double> v_;
};

// Elementary symmetric polynomials e_0..e_kmax by expanding prod (1 + x_i t).
template <class Real>
std::vector<Real> elementary_symmetric(std::span<const Real> x, int kmax) {
    std::vector<Real> e(static_cast<std::size_t>(kmax) + 1, Real(0));
    e[0] = Real(1);
    int seen = 0;
    for (Real xi : x) {
        ++seen;
        for (int k = std::min(seen, kmax); k >= 1; --k) e[k] += xi * e[k - 1];
    }
    return e;
}

inline double sigma_k(const EigenTuple& lambda, int k) {
    if (k < 1 || k > lambda.n())
        throw ParameterError("sigma_k: k=" + std::to_string(k) + " outside [1, n]");
    return elementary_symmetric<double>(lambda.entries(), k)[k];
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace ccl
