#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fdcovert/covertness.hpp"

using namespace fdcovert;

namespace {

// R = 1, sigma2_b = 0 dB, phi = 0.01, all lambda = 1
SystemParams fig4_params(double p_a) {
    SystemParams p;
    p.rate = 1.0;
    p.sigma2_b = 1.0;
    p.phi = 0.01;
    p.p_a = p_a;
    return p;
}

}  // namespace

TEST(TOfPowers, Examples) {
    SystemParams p;
    ChannelStats s;
    p.p_a = 1.0;
    p.p_b_max = 0.0;
    EXPECT_EQ(t_of_powers(p, s), 1.0);
    p.p_b_max = 1.0;
    EXPECT_EQ(t_of_powers(p, s), 0.5);
    p.p_b_max = 3.0;
    EXPECT_EQ(t_of_powers(p, s), 0.25);
}

TEST(ProbRho1GeqRho2, Examples) {
    SystemParams p;
    ChannelStats s;
    p.p_b_max = 0.0;
    EXPECT_EQ(prob_rho1_geq_rho2(p, s), 0.0);
    p.p_b_max = 1.0;
    EXPECT_EQ(prob_rho1_geq_rho2(p, s), 0.5);
    p.p_b_max = 2.5;
    EXPECT_EQ(prob_rho1_geq_rho2(p, s), 1.0 - t_of_powers(p, s));
}

TEST(ProbRho1GeqRho2, MonteCarloIndicator) {
    SystemParams p;
    p.p_a = 2.0;
    p.p_b_max = 3.0;
    ChannelStats s{1.0, 1.0, 0.7, 1.4};
    RandomSource rng(3);
    const int n = 1000000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const double g_aw = sample_gain(s.lambda_aw, rng);
        const double g_bw = sample_gain(s.lambda_bw, rng);
        hits += p.p_b_max * g_bw >= p.p_a * g_aw;
    }
    EXPECT_NEAR(static_cast<double>(hits) / n, prob_rho1_geq_rho2(p, s), 0.002);
}

TEST(ExpectedXiStar, PublishedForm) {
    EXPECT_EQ(expected_xi_star(1.0), 0.0);
    EXPECT_NEAR(expected_xi_star(0.5), 0.40342640972002735, 1e-15);
    EXPECT_NEAR(expected_xi_star(1e-300), 1.0, 1e-12);
    EXPECT_THROW(expected_xi_star(0.0), DomainError);
    EXPECT_THROW(expected_xi_star(1.5), DomainError);
    EXPECT_THROW(expected_xi_star(std::nan("")), DomainError);
}

// Frozen from scipy quad of E[(1 - X/Y) 1{X <= Y}], X ~ Exp(a), Y ~ Exp(b), t = a/(a+b).
TEST(ExpectedXiStar, ExactFormMatchesQuadrature) {
    EXPECT_NEAR(exact_expected_xi_star(0.5), 0.3068528194400548, 1e-13);
    EXPECT_NEAR(exact_expected_xi_star(0.25), 0.5379018796267032, 1e-13);
    EXPECT_NEAR(exact_expected_xi_star(0.8), 0.10742579474316115, 1e-13);
    EXPECT_EQ(exact_expected_xi_star(1.0), 0.0);
    EXPECT_NEAR(exact_expected_xi_star(1.0 - 1e-10), 0.0, 1e-9);
    EXPECT_NEAR(exact_expected_xi_star(1e-300), 1.0, 1e-12);
}

TEST(ExpectedXiStar, StrictlyDecreasing) {
    for (XiModel m : {XiModel::published, XiModel::exact}) {
        double prev = 1.0 + 1e-12;
        for (int i = 1; i <= 1000; ++i) {
            const double t = i / 1000.0;
            const double v = expected_xi_star(t, m);
            ASSERT_LT(v, prev) << to_string(m) << " t=" << t;
            ASSERT_GE(v, 0.0);
            prev = v;
        }
    }
}

TEST(MonteCarloExpectedXi, NoAnGivesZero) {
    SystemParams p;
    p.p_b_max = 0.0;
    const auto e = mc_expected_xi(p, {}, 10000, RandomSource(1));
    EXPECT_EQ(e.xi.value, 0.0);
    EXPECT_EQ(e.prob_rho1_geq.value, 0.0);
    EXPECT_EQ(expected_xi_star(t_of_powers(p, {})), 0.0);
}

// The oracle measures the exact mean; the published closed form sits about
// 0.097 above it at t = 0.5.
TEST(MonteCarloExpectedXi, HalfPointAgainstBothForms) {
    SystemParams p;
    p.p_a = 1.0;
    p.p_b_max = 1.0;
    const auto e = mc_expected_xi(p, {}, 100000, RandomSource(2));
    EXPECT_NEAR(e.xi.value, exact_expected_xi_star(0.5), 0.004);
    EXPECT_GT(std::abs(e.xi.value - expected_xi_star(0.5)), 0.05);
}

TEST(MonteCarloExpectedXi, FactorizationAndRandomSets) {
    RandomSource rng(5);
    for (int k = 0; k < 20; ++k) {
        SystemParams p;
        p.p_a = db_to_linear(20.0 * rng.uniform01() - 10.0);
        p.p_b_max = db_to_linear(30.0 * rng.uniform01() - 10.0);
        ChannelStats s{1.0, 1.0, 0.3 + 2.0 * rng.uniform01(), 0.3 + 2.0 * rng.uniform01()};
        const auto e = mc_expected_xi(p, s, 100000, RandomSource(50 + k));
        const double t = t_of_powers(p, s);
        EXPECT_LE(std::abs(exact_expected_xi_star(t) - e.xi.value), 3.0 * e.xi.std_error + 1e-3);
        const double pg = prob_rho1_geq_rho2(p, s);
        EXPECT_LE(std::abs(e.xi.value - pg * e.conditional_xi.value),
                  3.0 * (e.xi.std_error + pg * e.conditional_xi.std_error) + 1e-3);
    }
}

TEST(MonteCarloExpectedXi, IncreasingInAnCap) {
    double prev = -1.0;
    for (double pb_db : {-10.0, 0.0, 10.0, 20.0}) {
        SystemParams p;
        p.p_b_max = db_to_linear(pb_db);
        const double v = mc_expected_xi(p, {}, 50000, RandomSource(8)).xi.value;
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(SolveTEpsilon, Examples) {
    EXPECT_EQ(solve_t_epsilon(1.0), 1.0);
    EXPECT_NEAR(solve_t_epsilon(1.0 - 0.40342640972002735), 0.5, 1e-11);
    EXPECT_NEAR(solve_t_epsilon(1.0 - exact_expected_xi_star(0.5), XiModel::exact), 0.5, 1e-11);
    EXPECT_THROW(solve_t_epsilon(0.0), UnsatisfiableError);
    EXPECT_THROW(solve_t_epsilon(-0.1), DomainError);
    EXPECT_THROW(solve_t_epsilon(1.1), DomainError);
}

TEST(SolveTEpsilon, ResidualContract) {
    for (XiModel m : {XiModel::published, XiModel::exact}) {
        for (int i = 1; i < 1000; ++i) {
            const double eps = i / 1000.0;
            const double t = solve_t_epsilon(eps, m);
            ASSERT_GT(t, 0.0);
            ASSERT_LE(t, 1.0);
            ASSERT_LE(std::abs(expected_xi_star(t, m) - (1.0 - eps)), 1e-12) << eps;
        }
        for (double eps : {1e-3, 1e-5, 1e-8}) {
            const double t = solve_t_epsilon(eps, m);
            EXPECT_LE(std::abs(expected_xi_star(t, m) - (1.0 - eps)), 1e-12) << eps;
        }
    }
}

TEST(OptimalPbMax, Examples) {
    ChannelStats s;
    EXPECT_EQ(optimal_pb_max(1.0, s, 1.0), 0.0);
    EXPECT_NEAR(optimal_pb_max(1.0, s, 1.0 - 0.40342640972002735), 1.0, 1e-10);
    EXPECT_DOUBLE_EQ(optimal_pb_max(2.0, s, 0.1), 2.0 * optimal_pb_max(1.0, s, 0.1));
    EXPECT_THROW(optimal_pb_max(1.0, s, 0.0), UnsatisfiableError);
}

TEST(MaxCovertRate, Examples) {
    const SystemParams p = fig4_params(1.0);
    EXPECT_NEAR(max_covert_rate(p, {}, 1.0), std::exp(-1.0), 1e-15);
    SystemParams ideal = p;
    ideal.phi = 0.0;
    for (double eps : {0.05, 0.2, 0.9}) EXPECT_NEAR(max_covert_rate(ideal, {}, eps), std::exp(-1.0), 1e-15);
    EXPECT_THROW(max_covert_rate(p, {}, 0.0), UnsatisfiableError);
}

TEST(MaxCovertRate, ClosedFormEqualsComposition) {
    RandomSource rng(17);
    for (int k = 0; k < 200; ++k) {
        SystemParams p;
        p.p_a = db_to_linear(60.0 * rng.uniform01() - 10.0);
        p.sigma2_b = db_to_linear(20.0 * rng.uniform01() - 10.0);
        p.phi = rng.uniform01();
        p.rate = 0.1 + 3.0 * rng.uniform01();
        ChannelStats s{0.2 + 3.0 * rng.uniform01(), 0.2 + 3.0 * rng.uniform01(), 0.2 + 3.0 * rng.uniform01(),
                       0.2 + 3.0 * rng.uniform01()};
        const double eps = 0.01 + 0.98 * rng.uniform01();
        for (XiModel m : {XiModel::published, XiModel::exact}) {
            const double a = max_covert_rate(p, s, eps, m);
            const double b = max_covert_rate_closed_form(p, s, eps, m);
            ASSERT_LE(std::abs(a - b), 1e-10 * std::max(a, b));
            ASSERT_GE(a, 0.0);
            ASSERT_LE(a, p.rate);
        }
    }
}

TEST(MaxCovertRate, ConstraintActiveAndOptimal) {
    const SystemParams p = fig4_params(10.0);
    ChannelStats s;
    for (double eps : {0.05, 0.1, 0.2, 0.5}) {
        const CovertDesign d = design_covert(p, s, eps);
        SystemParams at = p;
        at.p_b_max = d.p_b_max_star;
        EXPECT_NEAR(expected_xi_star(t_of_powers(at, s)), 1.0 - eps, 1e-9);
        EXPECT_DOUBLE_EQ(d.r_c_star, max_covert_rate(p, s, eps));

        auto rate_at = [&](double pb) {
            SystemParams q = p;
            q.p_b_max = pb;
            return q.rate * (1.0 - outage_probability(make_outage_inputs(q, s)));
        };
        for (double f : {1.01, 1.5, 4.0}) EXPECT_LT(rate_at(f * d.p_b_max_star), d.r_c_star);
        for (double f : {0.99, 0.5}) {
            SystemParams q = p;
            q.p_b_max = f * d.p_b_max_star;
            EXPECT_LT(expected_xi_star(t_of_powers(q, s)), 1.0 - eps);
        }
    }
}

TEST(MaxCovertRate, Fig4Trends) {
    for (double eps : {0.05, 0.1, 0.2}) {
        double prev = 0.0;
        for (double pa_db = -10.0; pa_db <= 60.0; pa_db += 2.0) {
            const double r = max_covert_rate(fig4_params(db_to_linear(pa_db)), {}, eps);
            EXPECT_GE(r, prev);
            prev = r;
        }
    }
    for (double pa_db : {0.0, 20.0}) {
        const SystemParams p = fig4_params(db_to_linear(pa_db));
        EXPECT_LT(max_covert_rate(p, {}, 0.05), max_covert_rate(p, {}, 0.1));
        EXPECT_LT(max_covert_rate(p, {}, 0.1), max_covert_rate(p, {}, 0.2));
    }
}

TEST(CovertRateLimit, LargePowerAndIdealCancellation) {
    ChannelStats s;
    for (double eps : {0.05, 0.1, 0.2}) {
        const double limit = covert_rate_limit(s, 1.0, 0.01, eps);
        const double r = max_covert_rate(fig4_params(1e6), s, eps);
        EXPECT_LT(std::abs(r - limit) / limit, 1e-4);
        EXPECT_LE(r, limit);
        EXPECT_LT(1.0 - max_covert_rate(fig4_params(1e4), s, eps) / limit, 0.01);
    }
    EXPECT_NEAR(covert_rate_limit(s, 1.0, 1e-15, 0.1), 1.0, 1e-12);
    EXPECT_EQ(covert_rate_limit(s, 1.0, 0.0, 0.1), 1.0);

    double prev = 2.0;
    for (double phi = 1e-4; phi <= 1.0; phi *= 2.0) {
        const double v = covert_rate_limit(s, 1.0, phi, 0.1);
        EXPECT_LT(v, prev);
        prev = v;
    }
}
