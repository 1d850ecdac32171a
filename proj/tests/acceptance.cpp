// Acceptance criteria: one PASS/FAIL line each; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "ccl/ccl.hpp"
#include "family_draws.hpp"
#include "oracles.hpp"

using namespace ccl;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

constexpr double kExponentTol = 1e-10;
constexpr double kBoundSlack = 1e-9;
constexpr double kBandTol = 1e-10;
constexpr double kClassTol = 1e-8;
constexpr double kRoundTripTol = 1e-10;
constexpr double kPathTol = 1e-8;
constexpr double kBocherTol = 1e-9;
constexpr double kHolderTol = 0.02;
constexpr double kPsiSlack = 1e-10;
constexpr double kHarnackSlack = 0.01;
constexpr double kInvolutionTol = 1e-12;
constexpr double kMarginTol = -1e-12;
constexpr double kLinearTol = 0.10;
constexpr double kSlopeGap = 0.5;
constexpr double kNullTol = 1e-9;

Outcome exponent_formulas() {
    double worst = 0;
    for (int n = 3; n <= 8; ++n) {
        for (int k = 1; k <= n; ++k)
            worst = std::max(worst, std::abs(mu_plus(Cone::gamma_k(n, k)) - static_cast<double>(n - k) / k));
        for (double th : {0.0, 0.1, 0.5, 1.0, 5.0})
            worst = std::max(worst, std::abs(mu_plus(Cone::sigma_theta(n, th)) - (n - 1) * th / (1 + th)));
    }
    return {worst <= kExponentTol, "max |mu_plus - closed form| = " + num(worst)};
}

// Smallest t with (t, -1, ..., -1) in the closed theta-convex cone, from its linear inequalities.
double sigma_theta_threshold(int n, double th) {
    const double first = th * (n - 1) / (1 + th);  // t + th (t - (n-1)) >= 0
    const double rest = (n - 1) + 1 / th;           // -1 + th (t - (n-1)) >= 0
    return std::max(first, rest);
}

Outcome axis_condition() {
    bool ok = true;
    double worst = 0;
    for (int n = 3; n <= 8; ++n) {
        for (int k = 2; k <= n; ++k) ok = ok && mu_minus(Cone::gamma_k(n, k)) == kInf;
        const double d = std::abs(mu_minus(Cone::gamma_k(n, 1)) - (n - 1));
        worst = std::max(worst, d);
        for (double th : {0.1, 0.5, 1.0, 5.0}) {
            const double want = sigma_theta_threshold(n, th);
            worst = std::max(worst, std::abs(mu_minus(Cone::sigma_theta(n, th)) - want));
            worst = std::max(worst, std::abs(want - ((n - 1) + 1 / th)));
        }
    }
    return {ok && worst <= kExponentTol, std::string(ok ? "" : "finite mu_minus for k >= 2; ") + "max |delta| = " + num(worst)};
}

Cone random_cone(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dim(3, 8), kind(0, 6);
    std::uniform_real_distribution<double> unit(0, 1);
    const int n = dim(rng);
    switch (kind(rng)) {
        case 0: return Cone::gamma_k(n, std::uniform_int_distribution<int>(1, n)(rng));
        case 1: return Cone::sigma_theta(n, 10 * unit(rng) * unit(rng));
        case 2: return Cone::u_gamma_plus(n, (n - 1) * unit(rng) * 0.999);
        case 3: return Cone::l_gamma_plus(n, n - 2 + 0.999 * unit(rng));
        case 4: return Cone::u_gamma_minus(n, unit(rng) < 0.2 ? kInf : n - 1 + 0.01 + 10 * unit(rng));
        case 5: return Cone::l_gamma_minus(n, unit(rng) < 0.2 ? kInf : n - 1 + 0.01 + 10 * unit(rng));
        default: return Cone::gamma_t(Cone::gamma_k(n, std::uniform_int_distribution<int>(1, n)(rng)), unit(rng));
    }
}

Outcome exponent_bounds() {
    std::mt19937_64 rng(301);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        const Cone c = random_cone(rng);
        const int n = c.n();
        const double mp = mu_plus(c), mm = mu_minus(c);
        if (mp <= 1e-12) {
            bad += mm != kInf;
            continue;
        }
        const double lower = (n - 2) + (n - 1) / mp;
        if (lower > mm + kBoundSlack * std::max(1.0, lower)) ++bad;
        if (mp > n - 2 + 1e-12) {
            const double upper = (n - 1) / (mp - (n - 2));
            if (mm > upper + kBoundSlack * std::max(1.0, upper)) ++bad;
        }
    }
    double tight = 0;
    for (int n = 3; n <= 8; ++n) {
        const auto g = Cone::gamma_one(n);
        tight = std::max(tight, std::abs((n - 2) + (n - 1) / mu_plus(g) - mu_minus(g)));
    }
    const auto s = Cone::sigma_theta(3, 1);
    tight = std::max(tight, std::abs(1 + 2 / mu_plus(s) - mu_minus(s)));
    return {bad == 0 && tight <= kBoundSlack, std::to_string(bad) + " violations in 200 cones; equality gap " + num(tight)};
}

Outcome theta_cone_identity() {
    std::mt19937_64 rng(401);
    long disagreements = 0, compared = 0;
    for (int n = 3; n <= 8; ++n)
        for (double th : {0.0, 0.1, 0.5, 1.0, 5.0}) {
            const auto s = Cone::sigma_theta(n, th);
            const auto u = Cone::u_gamma_plus(n, (n - 1) * th / (1 + th));
            for (int i = 0; i < 10000; ++i) {
                const EigenTuple x(oracle::random_vector(rng, n));
                if (std::abs(s.depth(x)) <= kBandTol * (1 + x.norm())) continue;
                ++compared;
                disagreements += inside(s, x) != inside(u, x);
            }
        }
    return {disagreements == 0, std::to_string(disagreements) + " disagreements in " + std::to_string(compared)};
}

std::vector<ConeProfile> desk_profiles() {
    std::vector<ConeProfile> ps;
    for (int n = 3; n <= 8; ++n) {
        for (int k = 1; k <= n; ++k) ps.push_back(cone_profile(Cone::gamma_k(n, k)));
        for (double th : {0.0, 0.1, 0.5, 1.0, 5.0}) ps.push_back(cone_profile(Cone::sigma_theta(n, th)));
        ps.push_back(cone_profile(Cone::u_gamma_minus(n, n + 1.0)));
    }
    return ps;
}

Outcome classification() {
    std::mt19937_64 rng(501);
    int failed = 0, accepted_forbidden = 0, total = 0;
    double worst = 0;
    for (const auto& p : desk_profiles()) {
        for (const auto& d : draws::permitted(p, rng, 50)) {
            const auto rep = validate_family(p, d.family, d.annulus, 200, kClassTol);
            ++total;
            failed += !rep.pass;
            worst = std::max(worst, rep.max_residual);
        }
        for (const auto& d : draws::forbidden(p, rng, 5)) accepted_forbidden += validate_family(p, d.family, d.annulus, 200, kClassTol).pass;
    }
    return {failed == 0 && accepted_forbidden == 0 && worst <= kClassTol,
            std::to_string(failed) + "/" + std::to_string(total) + " permitted rejected, " + std::to_string(accepted_forbidden) +
                " forbidden accepted, max residual " + num(worst)};
}

Outcome bvp() {
    std::mt19937_64 rng(601);
    std::uniform_real_distribution<double> ra(0.1, 2), ratio(1.1, 6), bv(0.1, 10), unit(0, 1);
    const auto ps = desk_profiles();
    double trip = 0, gap = 0;
    int unsolved = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto& p = ps[i % ps.size()];
        const double a = ra(rng), b = a * ratio(rng), beta = bv(rng);
        const double U = (p.n - 2) * std::log(b / a);
        const double alpha = beta * std::exp(p.axis_on_boundary ? U * unit(rng) : std::log(2.0) * (2 * unit(rng) - 1));
        const auto res = solve_radial_bvp(p, Annulus(a, b), alpha, beta);
        const auto other = shoot_radial_bvp(p, Annulus(a, b), alpha, beta);
        if (!std::holds_alternative<RadialFamily>(res) || !std::holds_alternative<RadialFamily>(other)) {
            ++unsolved;
            continue;
        }
        const auto& f = std::get<RadialFamily>(res);
        trip = std::max({trip, std::abs(family_value(f, a) - alpha) / alpha, std::abs(family_value(f, b) - beta) / beta});
        for (double r : log_grid(a, b, 9, true)) {
            const double u = family_value(f, r);
            gap = std::max(gap, std::abs(family_value(std::get<RadialFamily>(other), r) - u) / u);
        }
    }
    int mismatched = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto& p = ps[i % ps.size()];
        const double a = ra(rng), b = a * ratio(rng), beta = bv(rng);
        const double U = (p.n - 2) * std::log(b / a);
        const double delta = std::pow(10.0, -8 + 6 * unit(rng)) * (unit(rng) < 0.5 ? -1 : 1);
        const double target = unit(rng) < 0.5 ? delta : U * (1 + delta);
        const double alpha = beta * std::exp(target);
        const double L = std::log(alpha / beta);
        const bool expected = !p.axis_on_boundary || (L >= 0 && L <= U);
        const auto res = solve_radial_bvp(p, Annulus(a, b), alpha, beta);
        mismatched += std::holds_alternative<RadialFamily>(res) != expected;
    }
    return {unsolved == 0 && trip <= kRoundTripTol && mismatched == 0 && gap <= kPathTol,
            "round trip " + num(trip) + ", " + std::to_string(mismatched) + " feasibility mismatches, path gap " + num(gap) +
                (unsolved ? ", " + std::to_string(unsolved) + " unsolved" : "")};
}

Outcome bocher() {
    std::mt19937_64 rng(701);
    std::uniform_real_distribution<double> c(0.1, 5);
    const auto radii = log_grid(1e-6, 0.5, 120, true);
    std::vector<ConeProfile> gt1;
    for (const auto& p : desk_profiles())
        if (p.mu_plus > 1 + 1e-6) gt1.push_back(p);
    double reassembly = 0, deviation = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto& p = gt1[i % gt1.size()];
        const auto prof = RadialProfile::sample(RadialFamily(p.n, PlusFamily{c(rng), c(rng), p.mu_plus}), radii);
        const auto d = bocher_decompose(p, prof);
        reassembly = std::max(reassembly, bocher_reassembly_error(p, prof, d));
        deviation = std::max(deviation, d.max_deviation);
    }
    double log_dev = 0;
    for (int n = 4; n <= 8; n += 2) {
        const auto p = cone_profile(Cone::gamma_k(n, n / 2));
        for (int i = 0; i < 20; ++i) {
            const auto d = bocher_decompose(p, RadialProfile::sample(RadialFamily(n, PowerLaw{c(rng), n - 2.0}), radii));
            log_dev = std::max(log_dev, d.max_deviation);
        }
    }
    // singular members for mu_plus < 1 among the enumerated classification
    int non_fundamental = 0;
    for (int n = 3; n <= 8; ++n)
        for (int k = 1; k <= n; ++k) {
            const auto p = cone_profile(Cone::gamma_k(n, k));
            if (!(p.mu_plus < 1 - 1e-6)) continue;
            for (double c3 : {0.0, 0.5, 2.0})
                for (double c4 : {0.0, 0.5, 2.0}) {
                    if (c3 + c4 == 0) continue;
                    const RadialFamily f(n, PlusFamily{c3, c4, p.mu_plus});
                    if (!validate_family(p, f, Annulus(0, kInf), 60).pass) continue;
                    const bool singular = family_value(f, 1e-40) > 2 * family_value(f, 1e-20);
                    if (!singular) continue;
                    const double f0 = std::pow(1e-6, n - 2) * family_value(f, 1e-6);
                    const double f1 = std::pow(0.5, n - 2) * family_value(f, 0.5);
                    non_fundamental += c4 != 0 || std::abs(f0 - f1) > 1e-12 * f1;
                }
        }
    return {reassembly <= kBocherTol && deviation <= kBocherTol && log_dev <= kBocherTol && non_fundamental == 0,
            "reassembly " + num(reassembly) + ", ring deviation " + num(deviation) + ", log-case deviation " + num(log_dev) +
                ", " + std::to_string(non_fundamental) + " non-fundamental singular members"};
}

Outcome holder() {
    std::mt19937_64 rng(801);
    std::uniform_real_distribution<double> c(0.2, 5);
    const auto radii = log_grid(1e-6, 0.5, 120, true);
    double worst = 0;
    int count = 0;
    for (double mu : {0.0, 0.25, 0.5, 0.75})
        for (int i = 0; i < 50; ++i) {
            const int n = 3 + i % 6;
            const Cone cone = mu == 0 ? Cone::gamma_k(n, n) : Cone::sigma_theta(n, mu / (n - 1 - mu));
            const double mp = mu_plus(cone);
            const auto prof = RadialProfile::sample(RadialFamily(n, PlusFamily{c(rng), c(rng), mp}), radii);
            worst = std::max(worst, std::abs(holder_exponent_fit(prof, mp) - (1 - mu)));
            ++count;
        }
    return {worst <= kHolderTol, std::to_string(count) + " draws, max |s - (1 - mu_plus)| = " + num(worst)};
}

Outcome monotone_quantities() {
    std::mt19937_64 rng(901);
    std::uniform_real_distribution<double> c(0.1, 5);
    std::uniform_int_distribution<int> pieces(1, 3);
    std::vector<std::pair<ConeProfile, int>> axis;
    for (int n = 3; n <= 8; ++n)
        for (int k = 1; k <= n; ++k) {
            const auto p = cone_profile(Cone::gamma_k(n, k));
            if (p.axis_on_boundary) axis.emplace_back(p, n);
        }
    const auto radii = log_grid(1e-3, 1, 80, true);
    int psi_bad = 0, bounds_bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto& [p, n] = axis[i % axis.size()];
        std::vector<RadialProfile> parts;
        for (int j = pieces(rng); j > 0; --j) {
            const RadialFamily f = is_log_exponent(p.mu_plus) ? RadialFamily(n, PowerLaw{c(rng), (n - 2) * c(rng) / 5})
                                                              : RadialFamily(n, PlusFamily{c(rng), c(rng), p.mu_plus});
            parts.push_back(RadialProfile::sample(f, radii));
        }
        const auto sup = pointwise_min(parts);
        std::vector<std::pair<double, double>> s;
        for (std::size_t j = 0; j < sup.size(); ++j) s.emplace_back(sup.radii()[j], sup.values()[j]);
        const auto psi = psi_profile(s, radii.back(), p.mu_plus, n);
        for (std::size_t j = 1; j < psi.size(); ++j)
            if (psi[j].second < psi[j - 1].second - kPsiSlack * (1 + std::abs(psi[j - 1].second))) {
                ++psi_bad;
                break;
            }
        bounds_bad += !supersolution_bounds(sup).pass;
    }
    return {psi_bad == 0 && bounds_bad == 0,
            std::to_string(psi_bad) + " Psi decreases, " + std::to_string(bounds_bad) + " monotonicity failures in 1000"};
}

Outcome harnack() {
    const int n = 4;
    const auto radii = log_grid(1e-6, 7.0 / 8, 400, true);
    double worst = 0;
    for (double c1 : {0.1, 1.0, 10.0})
        for (int i = 0; i <= 200; ++i) {
            const double c2 = (n - 2) * i / 200.0;
            const auto h = harnack_report(RadialProfile::sample(RadialFamily(n, PowerLaw{c1, c2}), radii), 1.0 / 8);
            worst = std::max(worst, h.max_scaled_log_gradient);
        }
    return {worst <= n - 2 + kHarnackSlack, "max |dln u/dln r| = " + num(worst)};
}

Outcome kelvin() {
    std::mt19937_64 rng(1101);
    std::uniform_real_distribution<double> coord(-0.3, 0.3), rad(0.2, 0.5);
    double inv = 0;
    for (int n = 3; n <= 8; ++n) {
        const Field fund = [n](std::span<const double> x) { return std::pow(norm(x), 2.0 - n); };
        for (int m = 0; m < 3; ++m) {
            std::vector<double> y(n);
            for (double& v : y) v = coord(rng);
            const KelvinMap map(y, rad(rng));
            inv = std::max(inv, kelvin_involution_check(fund, map, kelvin_shell_samples(map, 1000, 10 * n + m)));
        }
    }
    double margin = 1e300;
    const Field one = [](std::span<const double>) { return 1.0; };
    const RadialFamily harm(3, PlusFamily{1, 1, 2});
    const Field shifted = [&](std::span<const double> x) { return family_value(harm, norm(x)); };
    for (int n = 3; n <= 8; ++n) {
        const Field fund = [n](std::span<const double> x) { return std::pow(norm(x), 2.0 - n); };
        margin = std::min({margin, kelvin_scan(one, n, 1000, n).worst_margin, kelvin_scan(fund, n, 1000, n + 1).worst_margin});
    }
    margin = std::min(margin, kelvin_scan(shifted, 3, 1000, 17).worst_margin);

    double spread = 0;
    for (int n = 3; n <= 6; ++n) {
        std::vector<double> p(n, 0.0);
        p[0] = 2.0;
        const Field off = [n, p](std::span<const double> x) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
            return std::pow(s, 0.5 * (2 - n));
        };
        const auto rep = oscillation_scan(off, n, log_grid(1e-3, 0.5, 12, true), 400, 3);
        spread = std::max(spread, rep.slope_max / rep.slope_min - 1);
    }
    return {inv <= kInvolutionTol && margin >= kMarginTol && spread <= kLinearTol,
            "involution " + num(inv) + ", worst margin " + num(margin) + ", slope spread " + num(spread)};
}

Outcome sigma_theta_counterexample() {
    bool valid = true;
    double worst_res = 0, closest = 1e300;
    for (int n = 3; n <= 8; ++n)
        for (double th : {0.5, 1.0, 2.0}) {
            const auto p = cone_profile(Cone::sigma_theta(n, th));
            const double m = n - 2 + 1 / th;
            const RadialFamily f(n, MinusFamilyC{1, 0.5, p.mu_minus});
            const Annulus ann(0, std::pow(2.0, 1 / m));
            const auto rep = validate_family(p, f, ann, 200, kClassTol);
            valid = valid && rep.pass;
            worst_res = std::max(worst_res, rep.max_residual);
            // same function evaluated directly
            for (double r : {1e-3, 0.3, 0.9}) {
                const double direct = std::pow(std::pow(r, -m) - 0.5, (n - 2) / m);
                valid = valid && std::abs(family_value(f, r) - direct) <= 1e-9 * direct;
            }
            const double r1 = 1e-6, r2 = 1e-5;
            const double slope = (std::log(family_value(f, r2)) - std::log(family_value(f, r1))) / std::log(r2 / r1);
            closest = std::min(closest, std::abs(slope + (n - 2)));
        }
    return {valid && closest > kSlopeGap, std::string(valid ? "validates" : "does not validate") + " (max residual " +
                                              num(worst_res) + "); min |slope + (n-2)| near 0 = " + num(closest) +
                                              " (needs > 0.5)"};
}

// sigma_k of (V, v, ..., v) from a closed-form jet, by subset enumeration.
double null_residual(int n, int k, double r, double u, double up, double upp) {
    const double V = -u * upp + (n - 1.0) / (n - 2) * up * up;
    const double v = -u * up / r - up * up / (n - 2);
    const double top = std::max(std::abs(V), std::abs(v));
    if (top == 0) return 0;
    std::vector<double> lam(n, v / top), ones(n, 1.0);
    lam[0] = V / top;
    return std::abs(oracle::sigma_k_subsets(lam, k)) / oracle::sigma_k_subsets(ones, k);
}

Outcome sigma_k_null() {
    std::mt19937_64 rng(1301);
    std::uniform_real_distribution<double> any(-3, 3), pos(0.2, 3);
    double worst = 0;
    int draws_done = 0;
    for (int n = 3; n <= 8; ++n)
        for (int k = 1; k <= n; ++k)
            for (int i = 0; i < 50; ++i) {
                SigmaKNull s;
                s.k = k;
                if (2 * k == n) {
                    s.h1 = pos(rng);
                    s.h2 = any(rng);
                } else {
                    s.h3 = pos(rng);
                    s.h4 = pos(rng);
                }
                const RadialFamily f(n, s);
                ++draws_done;
                for (double r : log_grid(0.1, 10, 25, true)) {
                    double u, up, upp;
                    if (2 * k == n) {
                        u = s.h1 * std::pow(r, -s.h2);
                        up = -s.h2 * u / r;
                        upp = s.h2 * (s.h2 + 1) * u / (r * r);
                    } else {
                        const double mu = static_cast<double>(n - k) / k, q = (n - 2) / (mu - 1);
                        const double t = std::pow(r, 1 - mu), w = s.h3 * t + s.h4;
                        const double w1 = s.h3 * (1 - mu) * t / r, w2 = -mu * w1 / r;
                        u = std::pow(w, q);
                        up = q * u * w1 / w;
                        upp = q * u * (w2 / w + (q - 1) * w1 * w1 / (w * w));
                    }
                    worst = std::max(worst, null_residual(n, k, r, u, up, upp));
                    worst = std::max(worst, sigma_k_residual(n, k, radial_eigs(eval_family(f, r))));
                }
            }
    return {worst <= kNullTol, std::to_string(draws_done) + " draws, max relative sigma_k " + num(worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"exponent formulas", exponent_formulas},
        {"axis condition", axis_condition},
        {"exponent bounds", exponent_bounds},
        {"theta-convex cone identity", theta_cone_identity},
        {"classification exactness", classification},
        {"radial boundary value problem", bvp},
        {"Bocher decomposition", bocher},
        {"Holder exponent", holder},
        {"monotone quantities", monotone_quantities},
        {"Harnack surrogate", harnack},
        {"Kelvin transform", kelvin},
        {"theta-convex singular solution", sigma_theta_counterexample},
        {"sigma_k null family", sigma_k_null},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    }
    return failures;
}
