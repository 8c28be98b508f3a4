#include "muntz/approx.hpp"
#include "muntz/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace muntz;

namespace {

double frac(double x) { return x - std::floor(x); }

double t2_t4(double x) {
    const double t = frac(x);
    return t * t - t * t * t * t;
}

double t2_t(double x) {
    const double t = frac(x);
    return t * t - t;
}

}  // namespace

TEST(BestApprox, OracleValuesQuartic) {
    const std::vector<std::pair<std::size_t, double>> oracle{
        {1, 0.125}, {2, 0.0386479}, {4, 0.0145507}, {8, 0.00634398}, {16, 0.00296995}, {32, 0.00143789}};
    for (const auto& [n, e] : oracle) {
        const auto r = best_trig_approx(t2_t4, n);
        EXPECT_NEAR(r.En, e, 5e-7 + 1e-5 * e) << "n = " << n;
        EXPECT_LE(r.lower, r.upper);
        EXPECT_LE(r.certified_gap, 1e-3);
        EXPECT_LE(r.witness.degree(), n - 1);
    }
}

TEST(BestApprox, OracleValuesQuadratic) {
    const std::vector<std::pair<std::size_t, double>> oracle{
        {1, 0.125}, {2, 0.0382046}, {3, 0.0212171}, {4, 0.0145170}, {8, 0.00634095}};
    for (const auto& [n, e] : oracle) EXPECT_NEAR(best_trig_approx(t2_t, n).En, e, 5e-7 + 1e-5 * e) << "n = " << n;
}

TEST(BestApprox, PureHarmonicCannotBeApproximated) {
    for (std::size_t n : {2u, 4u, 8u}) {
        const double k = static_cast<double>(n);
        const auto r = best_trig_approx([k](double x) { return std::cos(2.0 * std::numbers::pi * k * x); }, n);
        EXPECT_NEAR(r.En, 1.0, 1e-3);
        EXPECT_TRUE(r.equioscillation_ok);
    }
}

TEST(BestApprox, ExactWhenInSpace) {
    const auto r = best_trig_approx([](double x) { return 0.3 + std::sin(2.0 * std::numbers::pi * x); }, 2);
    EXPECT_LT(r.En, 1e-10);
}

TEST(BestApprox, GridValidation) {
    ApproxOptions opt;
    opt.grid_m = 10;
    EXPECT_THROW(best_trig_approx(t2_t4, 4, opt), PreconditionError);
}

TEST(RhoN, ResidualOfPartialSum) {
    const auto s = rho_n([](double x) { return std::cos(2.0 * std::numbers::pi * x) + 0.5; }, 2);
    ASSERT_EQ(s.values.size(), 1024u);
    for (double v : s.values) EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(RateExperiment, SmallRun) {
    RateConfig cfg;
    cfg.N = 8;
    cfg.samples = 2;
    const auto t = rate_experiment(ExponentSequence::power(2.0, 8), 0.5, {2, 4, 8, 16}, cfg);
    ASSERT_EQ(t.rows.size(), 4u);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        EXPECT_GE(t.rows[i].running_max, t.rows[i - 1].running_max);
        EXPECT_LE(t.rows[i].En, t.rows[i - 1].En + 1e-9);
    }
    EXPECT_TRUE(std::isfinite(t.omega));
}

TEST(RateExperiment, Preconditions) {
    EXPECT_THROW(rate_experiment(ExponentSequence::power(1.0, 8), 0.5, {2, 4, 8, 16}), PreconditionError);
    const auto fam = rate_family(ExponentSequence::power(2.0, 8), RateConfig{8, 0.9, 1, 1, 32});
    EXPECT_THROW(rate_experiment(fam, 0.5, {1, 2, 4, 8}), PreconditionError);
}

TEST(RateFamily, UnitNormAndPeriodic) {
    const auto fam = rate_family(ExponentSequence::power(2.0, 8), RateConfig{8, 0.9, 42, 3, 32});
    ASSERT_EQ(fam.size(), 3u);
    for (const auto& f : fam) {
        EXPECT_NEAR(f(0.0), f(1.0 - 1e-15), 1e-12);
        EXPECT_NEAR(sup_norm(f, 0.0, 1.0 - 1e-12).norm, 1.0, 1e-6);
    }
}

TEST(Asymptotics, SineSeriesLeadingTerm) {
    const auto r = asymptotic_check(0.5, {0.005, 0.01, 0.02, 0.05, 0.1}, 1u << 14);
    EXPECT_TRUE(r.certified);
    EXPECT_LT(r.max_residual_sin, 0.05);
    ASSERT_EQ(r.rows.size(), 5u);
}
