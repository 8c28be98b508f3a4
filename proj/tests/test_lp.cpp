#include "muntz/error.hpp"
#include "muntz/lp.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace muntz;

TEST(Simplex, SmallProblem) {
    // min −x1 − 2x2 s.t. x1 + x2 + s1 = 4, x2 + s2 = 3.
    lp::StandardFormLP p;
    p.A.resize(2, 4);
    p.A << 1, 1, 1, 0, 0, 1, 0, 1;
    p.b = Eigen::Vector2d(4, 3);
    p.c = Eigen::Vector4d(-1, -2, 0, 0);
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_NEAR(s.objective, -7.0, 1e-12);
    EXPECT_NEAR(s.x(0), 1.0, 1e-12);
    EXPECT_NEAR(s.x(1), 3.0, 1e-12);
    // Dual feasibility Aᵀy ≤ c and strong duality.
    const Eigen::VectorXd slack = p.c - p.A.transpose() * s.duals;
    EXPECT_GE(slack.minCoeff(), -1e-12);
    EXPECT_NEAR(p.b.dot(s.duals), s.objective, 1e-12);
}

TEST(Simplex, NegativeRightHandSide) {
    // x1 − x2 = −2 with min x1 + x2: x = (0, 2).
    lp::StandardFormLP p;
    p.A.resize(1, 2);
    p.A << 1, -1;
    p.b = Eigen::VectorXd::Constant(1, -2.0);
    p.c = Eigen::Vector2d(1, 1);
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_NEAR(s.objective, 2.0, 1e-12);
    EXPECT_NEAR(p.b.dot(s.duals), 2.0, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
    lp::StandardFormLP inf;
    inf.A.resize(2, 2);
    inf.A << 1, 1, 1, 1;
    inf.b = Eigen::Vector2d(1, 2);
    inf.c = Eigen::Vector2d(1, 1);
    EXPECT_EQ(lp::solve(inf).status, lp::Status::Infeasible);

    lp::StandardFormLP unb;
    unb.A.resize(1, 2);
    unb.A << 1, -1;
    unb.b = Eigen::VectorXd::Constant(1, 1.0);
    unb.c = Eigen::Vector2d(0, -1);
    EXPECT_EQ(lp::solve(unb).status, lp::Status::Unbounded);
}

TEST(Simplex, RedundantRowsAreHandled) {
    lp::StandardFormLP p;
    p.A.resize(3, 3);
    p.A << 1, 1, 1, 2, 2, 2, 1, 0, 0;
    p.b = Eigen::Vector3d(1, 2, 0.25);
    p.c = Eigen::Vector3d(0, 1, 2);
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_NEAR(s.objective, 0.75, 1e-12);
}

TEST(DiscreteMinimax, ConstantFit) {
    Eigen::MatrixXd Phi = Eigen::MatrixXd::Ones(3, 1);
    const Eigen::Vector3d f(0.0, 1.0, 2.0);
    const auto r = lp::discrete_minimax(Phi, f);
    EXPECT_NEAR(r.coefficients(0), 1.0, 1e-12);
    EXPECT_NEAR(r.deviation, 1.0, 1e-12);
    EXPECT_NEAR(r.lower_bound, 1.0, 1e-12);
}

TEST(DiscreteMinimax, LineFitOfParabola) {
    // Best uniform line for t² on [0,1] is t − 1/8 with deviation 1/8.
    const int n = 201;
    Eigen::MatrixXd Phi(n, 2);
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        Phi(i, 0) = 1.0;
        Phi(i, 1) = t;
        f(i) = t * t;
    }
    std::vector<std::pair<std::size_t, int>> start{{0, 1}, {100, -1}, {200, 1}};
    const auto r = lp::discrete_minimax(Phi, f, start);
    EXPECT_NEAR(r.deviation, 0.125, 1e-12);
    EXPECT_NEAR(r.lower_bound, 0.125, 1e-12);
    EXPECT_NEAR(r.coefficients(0), -0.125, 1e-12);
    EXPECT_NEAR(r.coefficients(1), 1.0, 1e-12);
    // Dual weights annihilate the basis.
    EXPECT_LT((Phi.transpose() * r.weights).norm(), 1e-12);
}
