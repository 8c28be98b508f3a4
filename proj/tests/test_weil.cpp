#include "muntz/error.hpp"
#include "muntz/rng.hpp"
#include "muntz/weil.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace muntz;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCatalan = 0.915965594177219015;

TrigPolynomial random_trig(std::uint64_t seed, std::size_t degree) {
    Rng rng(seed);
    std::vector<Harmonic> h(degree);
    for (auto& c : h) c = {rng.normal(), rng.normal()};
    return TrigPolynomial(rng.normal(), h);
}

}  // namespace

TEST(Phase, ExactForIntegers) {
    EXPECT_EQ(phase_of(0.0), std::make_pair(1.0, 0.0));
    EXPECT_EQ(phase_of(1.0), std::make_pair(0.0, 1.0));
    EXPECT_EQ(phase_of(2.0), std::make_pair(-1.0, 0.0));
    EXPECT_EQ(phase_of(-1.0), std::make_pair(0.0, -1.0));
    const auto [c, s] = phase_of(0.5);
    EXPECT_NEAR(c, std::sqrt(0.5), 2e-16);
    EXPECT_NEAR(s, std::sqrt(0.5), 2e-16);
}

TEST(PsiWeight, Rules) {
    const auto p = PsiWeight::power(2.0, 0.0);
    EXPECT_DOUBLE_EQ(p(3), 1.0 / 9.0);
    EXPECT_NEAR(PsiWeight::inverse_log(0.0)(1), 1.0 / std::log(2.0), 1e-15);
    const auto t = PsiWeight::table({1.0, 0.5}, 0.0);
    EXPECT_THROW(t(3), TruncationError);
    EXPECT_FALSE(t.has_tail());
    const auto z = PsiWeight::table({1.0, 0.5}, 0.0, TableTail::Zero);
    EXPECT_EQ(z(5), 0.0);
    EXPECT_TRUE(z.finitely_supported());
    const auto w = PsiWeight::table({1.0, 0.5}, 0.0, TableTail::Power, 1.0);
    EXPECT_DOUBLE_EQ(w(4), 0.25);
}

TEST(PsiClass, Validation) {
    const auto r = validate_psi_class(PsiWeight::power(1.0, 0.0));
    EXPECT_TRUE(r.in_F1);
    EXPECT_EQ(r.tail_method, "integral");
    const auto l = validate_psi_class(PsiWeight::inverse_log(0.0));
    EXPECT_FALSE(l.sum_ok);
    EXPECT_FALSE(l.in_F1);
    EXPECT_EQ(l.tail_method, "divergent");
    const auto u = validate_psi_class(PsiWeight::table({1.0, 0.5, 0.3, 0.2}, 0.0));
    EXPECT_EQ(u.tail_method, "undecidable-tail");
    EXPECT_FALSE(u.in_F1);
    const auto nc = validate_psi_class(PsiWeight::table({1.0, 0.1, 0.09, 0.0}, 0.0, TableTail::Zero));
    EXPECT_FALSE(nc.positive_ok);
    EXPECT_THROW(validate_psi_class(PsiWeight::table({1.0, 0.5}, 0.0, TableTail::Zero)), DegenerateInputError);
}

TEST(ExponentialSum, ClosedForms) {
    const auto psi = PsiWeight::power(2.0, 0.0);
    const auto s0 = psi_exponential_sum(psi, 0.0);
    EXPECT_TRUE(s0.certified);
    EXPECT_NEAR(s0.value.real(), kPi * kPi / 6.0, 1e-9);
    const auto sh = psi_exponential_sum(psi, 0.5);
    EXPECT_NEAR(sh.value.real(), -kPi * kPi / 12.0, 1e-10);
    const auto sq = psi_exponential_sum(psi, 0.25);
    EXPECT_NEAR(sq.value.real(), -kPi * kPi / 48.0, 1e-10);
    EXPECT_NEAR(sq.value.imag(), kCatalan, 1e-10);
    EXPECT_LE(sq.error_bound, 1e-10);
}

TEST(ExponentialSum, SlowDecayUsesAbelTail) {
    // Σ cos(2πkx)/k = −ln(2 sin πx)
    const auto s = psi_exponential_sum(PsiWeight::power(1.0, 0.0), 0.1);
    EXPECT_TRUE(s.certified);
    EXPECT_NEAR(s.value.real(), -std::log(2.0 * std::sin(kPi * 0.1)), 1e-9);
    // Σ sin(2πkx)/k = π(1/2 − x)
    EXPECT_NEAR(s.value.imag(), kPi * (0.5 - 0.1), 1e-9);
    EXPECT_TRUE(psi_exponential_sum(PsiWeight::power(1.0, 0.0), 1.0).singular);
}

TEST(Kernel, ClosedForms) {
    const double x = 0.3;
    const auto k0 = dpsi_kernel(PsiWeight::power(2.0, 0.0), x);
    EXPECT_NEAR(k0.value, kPi * kPi * (x * x - x + 1.0 / 6.0), 1e-9);
    const auto k1 = dpsi_kernel(PsiWeight::power(2.0, 1.0), 0.25);
    EXPECT_NEAR(k1.value, -kCatalan, 1e-9);
    EXPECT_TRUE(dpsi_kernel(PsiWeight::power(1.0, 0.0), 0.0).singular);
}

TEST(WeilDerivative, ClassicalDerivative) {
    const auto p = random_trig(7, 5);
    const auto psi = PsiWeight::power(1.0, 1.0, 1024, 1.0 / (2.0 * kPi));
    const auto d = weil_derivative(exact_coefficients(p, 5), psi).as_polynomial();
    const double h = 1e-5;
    for (double x : {0.1, 0.45, 0.8}) {
        const double fd = (p(x + h) - p(x - h)) / (2.0 * h);
        EXPECT_NEAR(d(x), fd, 1e-4 * std::max(1.0, std::abs(fd)));
    }
}

TEST(WeilDerivative, RoundTripAndErrors) {
    const auto p = random_trig(8, 6);
    const auto c = exact_coefficients(p, 6);
    const auto psi = PsiWeight::power(1.5, 0.7);
    const auto back = weil_reconstruct(weil_derivative(c, psi), psi, c.a0).as_polynomial();
    EXPECT_LT(trig_sup_norm(back - p).norm, 1e-12);
    const auto zero = PsiWeight::table({1.0, 0.0, 1.0}, 0.0, TableTail::Zero);
    try {
        weil_derivative(c, zero);
        FAIL() << "expected DivisionError";
    } catch (const DivisionError& e) {
        EXPECT_EQ(e.harmonic(), 2);
    }
    EXPECT_THROW(weil_reconstruct(c, psi, 0.0), PreconditionError);
}

TEST(WeilDerivative, CompositionProperty) {
    const auto c = exact_coefficients(random_trig(9, 8), 8);
    const auto check = compose_property_check(c, PsiWeight::power(1.0, 0.5), PsiWeight::power(2.5, 1.25));
    EXPECT_TRUE(check.ok);
    EXPECT_LE(check.discrepancy, 1e-10);
}

TEST(Representation, RecoversTrigPolynomial) {
    const TrigPolynomial f(0.6, {{1.0, 0.0}, {0.0, -0.5}, {0.25, 0.25}});
    for (double beta : {0.0, 1.0}) {
        const auto r = representation_check(f, PsiWeight::power(2.0, beta), {0.0, 0.13, 0.5, 0.77}, 1e-10, 1u << 14);
        EXPECT_LT(r.max_error, 1e-5) << "beta " << beta;
    }
}
