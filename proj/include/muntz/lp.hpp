#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace muntz::lp {

/// min cᵀx subject to Ax = b, x ≥ 0.
struct StandardFormLP {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
};

struct Options {
    std::size_t max_iterations = 100000;
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-10;
    double pivot_tol = 1e-11;
    std::size_t refactor_every = 64;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    std::size_t bland_after = 50;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(Status s);

struct Solution {
    Status status = Status::IterationLimit;
    Eigen::VectorXd x;
    /// Multipliers y of the equality rows (Aᵀy ≤ c at optimality).
    Eigen::VectorXd duals;
    double objective = 0.0;
    std::size_t iterations = 0;
    std::vector<std::size_t> basis;
    std::vector<std::string> trace;
};

/// Dense revised simplex, two phases. An initial basis that is primal feasible skips phase I.
Solution solve(const StandardFormLP& lp, const Options& options = {},
               const std::vector<std::size_t>* initial_basis = nullptr);

struct MinimaxResult {
    Eigen::VectorXd coefficients;
    /// max_i |f_i − (Φc)_i| for the returned coefficients.
    double deviation = 0.0;
    /// Σ f_i w_i for the dual weights: a lower bound on the discrete (and continuous) optimum.
    double lower_bound = 0.0;
    Eigen::VectorXd weights;
    std::size_t iterations = 0;
};

/// min_c max_i |f_i − (Φc)_i| through the dual LP over signed weights
/// (Φᵀw = 0, Σ|w_i| = 1, maximize fᵀw). `start` lists (row, sign) pairs for an
/// initial basis; when empty or infeasible, phase I is used.
/// Throws OptimizationError if the solver does not reach optimality.
MinimaxResult discrete_minimax(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& f,
                               const std::vector<std::pair<std::size_t, int>>& start = {},
                               const Options& options = {});

}  // namespace muntz::lp
