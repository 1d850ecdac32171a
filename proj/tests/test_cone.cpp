#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <numeric>
#include <random>

#include "ccl/cone.hpp"
#include "oracles.hpp"

using namespace ccl;

TEST(Sigma, Examples) {
    EXPECT_DOUBLE_EQ(sigma_k(EigenTuple{1, 1, 1}, 2), 3.0);
    EXPECT_DOUBLE_EQ(sigma_k(EigenTuple{0.5, -2, 3.25, 7}, 1), 0.5 - 2 + 3.25 + 7);
    EXPECT_NEAR(sigma_k(EigenTuple{-1, 1, 1, 1}, 2), 0.0, 1e-15);
}

TEST(Sigma, RangeChecked) {
    EXPECT_THROW(sigma_k(EigenTuple{1, 1, 1}, 0), ParameterError);
    EXPECT_THROW(sigma_k(EigenTuple{1, 1, 1}, 4), ParameterError);
    EXPECT_THROW(EigenTuple({1.0, 2.0}), ParameterError);
    EXPECT_THROW(EigenTuple({1.0, NAN, 2.0}), ParameterError);
}

TEST(Sigma, MatchesSubsetEnumeration) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 3 + trial % 6;
        const auto x = oracle::random_vector(rng, n, -2, 2);
        for (int k = 1; k <= n; ++k) {
            const double want = oracle::sigma_k_subsets(x, k);
            std::vector<double> mag(x.size());
            std::transform(x.begin(), x.end(), mag.begin(), [](double v) { return std::abs(v); });
            EXPECT_NEAR(sigma_k(EigenTuple(x), k), want, 1e-12 * oracle::sigma_k_subsets(mag, k));
        }
    }
}

TEST(Depth, Examples) {
    EXPECT_DOUBLE_EQ(cone_depth(Cone::sigma_theta(3, 1), EigenTuple{1, 1, 1}), 4.0);
    EXPECT_NEAR(cone_depth(Cone::sigma_theta(3, 1), EigenTuple{-1, 1, 1}), 0.0, 1e-15);
    EXPECT_LT(cone_depth(Cone::gamma_k(4, 2), EigenTuple{-1, -1, 1, 1}), 0.0);
    EXPECT_THROW(cone_depth(Cone::gamma_k(4, 2), EigenTuple{1, 1, 1}), ParameterError);
}

TEST(Classify, Examples) {
    for (const auto& c : {Cone::gamma_k(3, 2), Cone::sigma_theta(5, 0.3), Cone::gamma_one(4)})
        EXPECT_EQ(classify_point(c, EigenTuple(std::vector<double>(c.n(), 0.0)), 1e-10), PointClass::Boundary);
    EXPECT_EQ(classify_point(Cone::gamma_k(4, 2), EigenTuple{-1, 1, 1, 1}, 1e-10), PointClass::Boundary);
    EXPECT_EQ(classify_point(Cone::gamma_one(3), EigenTuple{3, -1, -1}, 1e-10), PointClass::Interior);
}

TEST(Exponents, Examples) {
    EXPECT_NEAR(mu_plus(Cone::gamma_k(4, 2)), 1.0, 1e-10);
    EXPECT_NEAR(mu_plus(Cone::gamma_one(3)), 2.0, 1e-10);
    EXPECT_NEAR(mu_plus(Cone::sigma_theta(5, 0.25)), 0.8, 1e-10);
    EXPECT_EQ(mu_minus(Cone::gamma_k(4, 2)), kInf);
    EXPECT_NEAR(mu_minus(Cone::gamma_one(3)), 2.0, 1e-10);
    EXPECT_NEAR(mu_minus(Cone::sigma_theta(3, 1)), 3.0, 1e-10);
}

TEST(Profile, Examples) {
    const auto p = cone_profile(Cone::gamma_k(3, 3));
    EXPECT_NEAR(p.mu_plus, 0.0, 1e-10);
    EXPECT_EQ(p.mu_minus, kInf);
    EXPECT_TRUE(p.axis_on_boundary);

    const auto q = cone_profile(Cone::gamma_one(5));
    EXPECT_NEAR(q.mu_plus, 4.0, 1e-10);
    EXPECT_NEAR(q.mu_minus, 4.0, 1e-10);
    EXPECT_FALSE(q.axis_on_boundary);

    const auto u = cone_profile(Cone::u_gamma_plus(4, 1.5));
    EXPECT_NEAR(u.mu_plus, 1.5, 1e-10);
    EXPECT_GE(u.mu_minus, (4 - 2) + 3 / 1.5 - 1e-9);
}

TEST(ExponentBounds, Examples) {
    EXPECT_TRUE(all_pass(exponent_bound_report(Cone::gamma_k(6, 3))));

    const auto rs = exponent_bound_report(Cone::sigma_theta(3, 1));
    EXPECT_TRUE(all_pass(rs));
    const auto d = std::find_if(rs.begin(), rs.end(), [](const CheckEntry& e) { return e.name == "d_lower"; });
    ASSERT_NE(d, rs.end());
    EXPECT_NEAR(d->lhs, 3.0, 1e-9);
    EXPECT_NEAR(d->rhs, 3.0, 1e-9);

    const auto rg = exponent_bound_report(Cone::gamma_one(4));
    EXPECT_TRUE(all_pass(rg));
    for (const auto& e : rg)
        if (e.name == "d_lower" || e.name == "d_upper") {
            EXPECT_NEAR(e.lhs, 3.0, 1e-9);
            EXPECT_NEAR(e.rhs, 3.0, 1e-9);
        }
}

TEST(Cone, ConstructorRanges) {
    EXPECT_THROW(Cone::gamma_k(4, 0), ParameterError);
    EXPECT_THROW(Cone::gamma_k(2, 1), ParameterError);
    EXPECT_THROW(Cone::sigma_theta(4, -0.1), ParameterError);
    EXPECT_THROW(Cone::u_gamma_plus(4, 3.0), ParameterError);
    EXPECT_THROW(Cone::l_gamma_minus(4, 2.5), ParameterError);
    EXPECT_THROW(Cone::gamma_t(Cone::gamma_k(4, 2), 1.5), ParameterError);
}

namespace {

std::vector<Cone> zoo() {
    std::vector<Cone> cs;
    for (int n = 3; n <= 6; ++n) {
        for (int k = 1; k <= n; ++k) cs.push_back(Cone::gamma_k(n, k));
        for (double th : {0.0, 0.3, 2.0}) cs.push_back(Cone::sigma_theta(n, th));
        cs.push_back(Cone::u_gamma_plus(n, 0.5));
        cs.push_back(Cone::l_gamma_plus(n, n - 1.5));
        cs.push_back(Cone::u_gamma_minus(n, n + 1.0));
        cs.push_back(Cone::l_gamma_minus(n, n + 1.0));
        cs.push_back(Cone::l_gamma_minus(n, kInf));
        cs.push_back(Cone::gamma_one(n));
        cs.push_back(Cone::gamma_t(Cone::gamma_k(n, 2), 0.4));
    }
    return cs;
}

}  // namespace

TEST(ConeProperties, Homogeneity) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> t(0.01, 100);
    for (const auto& c : zoo())
        for (int i = 0; i < 50; ++i) {
            const auto x = oracle::random_vector(rng, c.n());
            const double s = t(rng);
            std::vector<double> y(x);
            for (double& v : y) v *= s;
            const double g = c.depth(EigenTuple(x));
            EXPECT_NEAR(c.depth(EigenTuple(y)), s * g, 1e-12 * s * (std::abs(g) + EigenTuple(x).norm())) << c.describe();
        }
}

TEST(ConeProperties, PermutationSymmetry) {
    std::mt19937_64 rng(3);
    for (const auto& c : zoo()) {
        if (c.n() > 5) continue;
        for (int i = 0; i < 5; ++i) {
            auto x = oracle::random_vector(rng, c.n());
            const double g = c.depth(EigenTuple(x));
            std::sort(x.begin(), x.end());
            do {
                EXPECT_NEAR(c.depth(EigenTuple(x)), g, 1e-12 * (1 + std::abs(g))) << c.describe();
            } while (std::next_permutation(x.begin(), x.end()));
        }
    }
}

TEST(ConeProperties, Sandwich) {
    std::mt19937_64 rng(4);
    for (const auto& c : zoo()) {
        for (int i = 0; i < 10000 / 20; ++i) {
            const auto pos = oracle::random_vector(rng, c.n(), 1e-3, 1);
            EXPECT_EQ(classify_point(c, EigenTuple(pos), 1e-12), PointClass::Interior) << c.describe();
            auto neg = oracle::random_vector(rng, c.n());
            if (oracle::sum(neg) >= -1e-3) neg[0] -= oracle::sum(neg) + 0.01;
            EXPECT_EQ(classify_point(c, EigenTuple(neg), 1e-12), PointClass::Exterior) << c.describe();
        }
    }
}

TEST(ConeProperties, MidpointConvexity) {
    std::mt19937_64 rng(5);
    for (const auto& c : zoo()) {
        std::vector<std::vector<double>> interior;
        while (interior.size() < 400) {
            auto x = oracle::random_vector(rng, c.n());
            if (classify_point(c, EigenTuple(x), 1e-12) == PointClass::Interior) interior.push_back(std::move(x));
        }
        for (std::size_t i = 0; i + 1 < interior.size(); ++i) {
            std::vector<double> m(c.n());
            for (int j = 0; j < c.n(); ++j) m[j] = 0.5 * (interior[i][j] + interior[i + 1][j]);
            EXPECT_TRUE(inside(c, EigenTuple(m))) << c.describe();
        }
    }
}

TEST(ConeProperties, SigmaThetaMatchesUpperExtremal) {
    std::mt19937_64 rng(6);
    for (int n = 3; n <= 6; ++n)
        for (double th : {0.1, 0.5, 1.0, 5.0}) {
            const auto s = Cone::sigma_theta(n, th);
            const auto u = Cone::u_gamma_plus(n, (n - 1) * th / (1 + th));
            int disagree = 0;
            for (int i = 0; i < 10000; ++i) {
                const EigenTuple x(oracle::random_vector(rng, n));
                if (std::abs(s.depth(x)) <= 1e-10 * (1 + x.norm())) continue;
                disagree += inside(s, x) != inside(u, x);
            }
            EXPECT_EQ(disagree, 0) << n << ' ' << th;
        }
}

TEST(ConeProperties, ExtremalContainment) {
    std::mt19937_64 rng(7);
    std::vector<Cone> cs;
    for (int n = 3; n <= 6; ++n) {
        cs.push_back(Cone::gamma_one(n));
        cs.push_back(Cone::sigma_theta(n, n));
        cs.push_back(Cone::sigma_theta(n, 0.5));
        for (int k = 1; k <= n; ++k) cs.push_back(Cone::gamma_k(n, k));
    }
    for (const auto& c : cs) {
        const double mu = mu_plus(c);
        if (mu >= c.n() - 1 - 1e-9) continue;
        const auto upper = Cone::u_gamma_plus(c.n(), std::max(mu, 0.0));
        std::optional<Cone> lower;
        if (mu >= c.n() - 2 && mu < c.n() - 1 - 1e-9) lower = Cone::l_gamma_plus(c.n(), mu);
        for (int i = 0; i < 2000; ++i) {
            const EigenTuple x(oracle::random_vector(rng, c.n()));
            if (mu >= 0 && inside(c, x)) EXPECT_TRUE(inside(upper, x) || std::abs(upper.depth(x)) < 1e-9) << c.describe();
            if (lower && inside(*lower, x)) EXPECT_TRUE(inside(c, x) || std::abs(c.depth(x)) < 1e-9) << c.describe();
        }
    }
}

TEST(ConeProperties, MuPlusAboveMinusOne) {
    for (const auto& c : zoo()) EXPECT_GT(mu_plus(c), -1.0) << c.describe();
}

TEST(ConeProperties, GammaTEndpoints) {
    std::mt19937_64 rng(8);
    for (int n = 3; n <= 6; ++n) {
        const auto base = Cone::gamma_k(n, n);
        const auto t1 = Cone::gamma_t(base, 1.0);
        const auto t0 = Cone::gamma_t(base, 1e-6);
        const auto half = Cone::gamma_one(n);
        for (int i = 0; i < 2000; ++i) {
            const EigenTuple x(oracle::random_vector(rng, n));
            EXPECT_EQ(inside(t1, x), inside(base, x));
            if (std::abs(x.sum()) > 1e-2 * x.norm()) EXPECT_EQ(inside(t0, x), inside(half, x));
        }
    }
}

namespace {

// On a plane through the diagonal every zero set of sigma_j is a union of lines through the
// origin, so the component of {sigma_k > 0} containing the diagonal is an arc of directions.
void slice_check(int n, int k, std::mt19937_64& rng) {
    std::vector<double> p(n, 1.0 / std::sqrt(n));
    auto q = oracle::random_vector(rng, n);
    double dot = 0;
    for (int i = 0; i < n; ++i) dot += q[i] * p[i];
    for (int i = 0; i < n; ++i) q[i] -= dot * p[i];
    double qn = 0;
    for (double v : q) qn += v * v;
    for (double& v : q) v /= std::sqrt(qn);

    auto direction = [&](double angle, double radius) {
        std::vector<double> l(n);
        for (int m = 0; m < n; ++m) l[m] = radius * (std::cos(angle) * p[m] + std::sin(angle) * q[m]);
        return l;
    };
    const int N = 200000;
    const double step = 2 * M_PI / N;
    auto positive = [&](int i) { return oracle::sigma_k_subsets(direction(i * step, 1.0), k) > 0; };
    ASSERT_TRUE(positive(0));
    int hi = 0, lo = 0;
    while (hi < N / 2 && positive(hi + 1)) ++hi;
    while (lo > -N / 2 && positive(lo - 1)) --lo;
    const double arc_lo = lo * step, arc_hi = hi * step;

    std::uniform_real_distribution<double> angle(-M_PI, M_PI), radius(0.01, 3);
    const auto cone = Cone::gamma_k(n, k);
    int mismatches = 0;
    for (int t = 0; t < 2000; ++t) {
        const double a = angle(rng);
        if (std::abs(a - arc_lo) < 2 * step || std::abs(a - arc_hi) < 2 * step) continue;
        const bool in_arc = a > arc_lo && a < arc_hi;
        mismatches += in_arc != inside(cone, EigenTuple(direction(a, radius(rng))));
    }
    EXPECT_EQ(mismatches, 0) << "n=" << n << " k=" << k;
}

}  // namespace

TEST(ConeProperties, GardingCharacterizationMatchesComponent) {
    std::mt19937_64 rng(9);
    for (int n = 3; n <= 4; ++n)
        for (int k = 1; k <= n; ++k)
            for (int s = 0; s < 3; ++s) slice_check(n, k, rng);
}

TEST(ConeProperties, ExponentMonotoneMembership) {
    for (const auto& c : zoo()) {
        bool was_inside = true;
        for (double t = -1; t <= c.n(); t += 0.01) {
            std::vector<double> x(c.n(), 1.0);
            x[0] = -t;
            const bool in = inside(c, EigenTuple(x));
            EXPECT_FALSE(in && !was_inside) << c.describe() << " t=" << t;
            was_inside = in;
        }
    }
}
