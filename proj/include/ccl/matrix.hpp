#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "ccl/errors.hpp"

namespace ccl {

// Dense square matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
        require(n >= 1, "matrix size must be positive");
    }
    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Matrix diagonal(std::span<const double> d) {
        Matrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.n_; ++i) m(i, i) = d[i];
        return m;
    }

    int n() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    std::span<const double> data() const { return a_; }

    double frobenius() const {
        double s = 0;
        for (double x : a_) s += x * x;
        return std::sqrt(s);
    }
    double asymmetry() const {
        double s = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) s = std::max(s, std::abs((*this)(i, j) - (*this)(j, i)));
        return s;
    }

    Matrix operator*(const Matrix& b) const {
        Matrix c(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const double aik = (*this)(i, k);
                for (int j = 0; j < n_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    Matrix operator-(const Matrix& b) const {
        Matrix c(*this);
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] -= b.a_[i];
        return c;
    }
    Matrix scaled(double s) const {
        Matrix c(*this);
        for (double& x : c.a_) x *= s;
        return c;
    }
    Matrix transposed() const {
        Matrix c(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) c(j, i) = (*this)(i, j);
        return c;
    }

private:
    int n_ = 0;
    std::vector<double> a_;
};

struct SymEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column j is the eigenvector of values[j]
};

inline constexpr int kJacobiMaxSweeps = 30;
inline constexpr int kJacobiMaxSize = 16;

// Cyclic Jacobi with threshold sweeps.
inline SymEigen sym_eigen(const Matrix& m) {
    const int n = m.n();
    require(n <= kJacobiMaxSize, "sym_eigen: matrix larger than 16x16");
    const double scale = m.frobenius();
    if (m.asymmetry() > 1e-12 * std::max(scale, 1e-300) && m.asymmetry() > 0)
        throw ParameterError("sym_eigen: matrix is not symmetric");

    Matrix a(m);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
    Matrix q = Matrix::identity(n);

    auto off = [&] {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        const double o = off();
        if (o <= 1e-300 || o <= 1e-17 * scale) break;
        const double threshold = sweep < 3 ? 0.2 * o / (n * n) : 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int r = p + 1; r < n; ++r) {
                const double apr = a(p, r);
                if (std::abs(apr) <= threshold || apr == 0.0) continue;
                const double theta = (a(r, r) - a(p, p)) / (2 * apr);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akr = a(k, r);
                    a(k, p) = c * akp - s * akr;
                    a(k, r) = s * akp + c * akr;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), ark = a(r, k);
                    a(p, k) = c * apk - s * ark;
                    a(r, k) = s * apk + c * ark;
                }
                a(p, r) = a(r, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double qkp = q(k, p), qkr = q(k, r);
                    q(k, p) = c * qkp - s * qkr;
                    q(k, r) = s * qkp + c * qkr;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
    SymEigen out{std::vector<double>(static_cast<std::size_t>(n)), Matrix(n)};
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (int k = 0; k < n; ++k) out.vectors(k, j) = q(k, order[j]);
    }
    return out;
}

inline std::vector<double> sym_eigenvalues(const Matrix& m) { return sym_eigen(m).values; }

}  // namespace ccl
