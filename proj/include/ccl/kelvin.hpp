#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "ccl/errors.hpp"

namespace ccl {

using Field = std::function<double(std::span<const double>)>;

struct KelvinMap {
    std::vector<double> y;
    double lambda;

    KelvinMap(std::vector<double> center, double radius) : y(std::move(center)), lambda(radius) {
        require(lambda > 0 && std::isfinite(lambda), "kelvin map: radius must be positive");
        require(y.size() >= 3, "kelvin map: dimension must be >= 3");
    }
    int n() const { return static_cast<int>(y.size()); }

    // y + lambda^2 (x - y) / |x - y|^2
    std::vector<double> reflect(std::span<const double> x) const {
        require(x.size() == y.size(), "kelvin: point dimension mismatch");
        double d2 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
        if (d2 == 0) throw DomainError("kelvin: x equals the center");
        std::vector<double> out(x.size());
        const double s = lambda * lambda / d2;
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[i] + s * (x[i] - y[i]);
        return out;
    }
    double distance(std::span<const double> x) const {
        double d2 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
        return std::sqrt(d2);
    }
};

inline double kelvin_transform(const Field& w, const KelvinMap& map, std::span<const double> x) {
    const auto xr = map.reflect(x);
    const double v = w(xr);
    if (!(v > 0) || !std::isfinite(v)) throw DomainError("kelvin: field undefined at the reflected point");
    const int n = map.n();
    return std::pow(map.lambda / map.distance(x), n - 2) * v;
}

inline double kelvin_involution_check(const Field& w, const KelvinMap& map,
                                      const std::vector<std::vector<double>>& samples) {
    const Field once = [&](std::span<const double> z) { return kelvin_transform(w, map, z); };
    double worst = 0;
    for (const auto& x : samples) {
        const double back = kelvin_transform(once, map, x);
        const double ref = w(x);
        worst = std::max(worst, std::abs(back - ref) / ref);
    }
    return worst;
}

inline double norm(std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// Radical-inverse sequence in prime bases, shifted by a seeded rotation.
class Halton {
public:
    Halton(int dims, std::uint64_t seed) : shift_(static_cast<std::size_t>(dims)) {
        static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                         73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137};
        require(dims >= 1 && dims <= 33, "halton: unsupported dimension");
        base_.assign(primes, primes + dims);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (double& s : shift_) s = u01(rng);
    }
    std::vector<double> next() {
        ++index_;
        std::vector<double> out(base_.size());
        for (std::size_t d = 0; d < base_.size(); ++d) {
            double f = 1, r = 0;
            for (std::uint64_t i = index_; i > 0; i /= base_[d]) {
                f /= base_[d];
                r += f * static_cast<double>(i % base_[d]);
            }
            out[d] = std::fmod(r + shift_[d], 1.0);
        }
        return out;
    }

private:
    std::vector<int> base_;
    std::vector<double> shift_;
    std::uint64_t index_ = 0;
};

// Points x with lambda/2 <= |x - y| <= 2 lambda, away from the origin.
inline std::vector<std::vector<double>> kelvin_shell_samples(const KelvinMap& map, int count, std::uint64_t seed) {
    const int n = map.n();
    Halton seq(n + 1, seed);
    std::vector<std::vector<double>> out;
    while (static_cast<int>(out.size()) < count) {
        auto h = seq.next();
        std::vector<double> d(h.begin(), h.begin() + n);
        for (double& c : d) c = 2 * c - 1;
        const double len = norm(d);
        if (len >= 1 || len < 1e-3) continue;
        const double rho = map.lambda * std::pow(4.0, h[n] - 0.5);
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) x[i] = map.y[i] + rho * d[i] / len;
        if (norm(x) < 1e-2) continue;
        out.push_back(std::move(x));
    }
    return out;
}

struct KelvinRow {
    std::vector<double> y;
    double lambda = 0;
    std::vector<double> x;
    double lhs = 0;     // w_{y,lambda}(x)
    double rhs = 0;     // w(x)
    double margin = 0;  // (rhs - lhs) / rhs
};

struct KelvinScanReport {
    std::vector<KelvinRow> rows;
    double worst_margin = 1e300;
    bool pass = true;
};

inline constexpr double kKelvinSlack = 1e-12;

// Samples balls B_lambda(y) inside the punctured unit ball and points x of the unit ball
// outside them, and checks w_{y,lambda}(x) <= w(x).
inline KelvinScanReport kelvin_scan(const Field& w, int n, int samples, std::uint64_t seed) {
    require(n >= 3 && samples > 0, "kelvin_scan: bad arguments");
    Halton seq(2 * n + 1, seed);
    KelvinScanReport rep;
    int attempts = 0;
    while (static_cast<int>(rep.rows.size()) < samples) {
        require(++attempts < 10000 * samples, "kelvin_scan: rejection sampling stalled");
        const auto h = seq.next();
        std::vector<double> y(n), x(n);
        for (int i = 0; i < n; ++i) {
            y[i] = 2 * h[i] - 1;
            x[i] = 2 * h[n + 1 + i] - 1;
        }
        const double ry = norm(y);
        if (ry >= 1 || ry == 0) continue;
        const double lam = h[n] * std::min(ry, 1 - ry);
        if (lam <= 0) continue;
        const KelvinMap map(y, lam);
        const double rx = norm(x);
        if (rx >= 1 || rx == 0 || map.distance(x) <= lam) continue;
        KelvinRow row{y, lam, x, kelvin_transform(w, map, x), w(x), 0};
        row.margin = (row.rhs - row.lhs) / row.rhs;
        rep.worst_margin = std::min(rep.worst_margin, row.margin);
        if (row.margin < -kKelvinSlack) rep.pass = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// sup - inf of ln w over sampled points of the sphere of radius R about the origin.
inline double log_oscillation(const Field& w, const std::vector<std::vector<double>>& directions, double R) {
    double hi = -1e300, lo = 1e300;
    for (const auto& d : directions) {
        std::vector<double> x(d);
        for (double& c : x) c *= R;
        const double l = std::log(w(x));
        hi = std::max(hi, l);
        lo = std::min(lo, l);
    }
    return hi - lo;
}

// Unit directions from a low-discrepancy sequence, plus the coordinate axes.
inline std::vector<std::vector<double>> sphere_directions(int n, int count, std::uint64_t seed) {
    std::vector<std::vector<double>> out;
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            std::vector<double> e(n, 0.0);
            e[i] = s;
            out.push_back(std::move(e));
        }
    Halton seq(n, seed);
    while (static_cast<int>(out.size()) < count + 2 * n) {
        auto h = seq.next();
        for (double& c : h) c = 2 * c - 1;
        const double r = norm(h);
        if (r >= 1 || r < 1e-3) continue;
        for (double& c : h) c /= r;
        out.push_back(std::move(h));
    }
    return out;
}

struct OscillationReport {
    std::vector<double> radii;
    std::vector<double> oscillation;
    double slope_min = 0, slope_max = 0;  // oscillation / R
    bool linear = false;                  // slope_max <= 1.1 slope_min
};

inline OscillationReport oscillation_scan(const Field& w, int n, const std::vector<double>& radii, int directions,
                                          std::uint64_t seed) {
    const auto dirs = sphere_directions(n, directions, seed);
    OscillationReport rep;
    rep.radii = radii;
    rep.slope_min = 1e300;
    rep.slope_max = 0;
    for (double R : radii) {
        const double osc = log_oscillation(w, dirs, R);
        rep.oscillation.push_back(osc);
        rep.slope_min = std::min(rep.slope_min, osc / R);
        rep.slope_max = std::max(rep.slope_max, osc / R);
    }
    rep.linear = rep.slope_min > 0 && rep.slope_max <= 1.1 * rep.slope_min;
    return rep;
}

}  // namespace ccl
