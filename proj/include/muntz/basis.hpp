#pragma once

#include "muntz/core.hpp"
#include "muntz/fourier.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace muntz {

/// u₁ = t^{λ₁}, u_{n+1} = t^{λ_{n+1}} − t^{λ_n}, n < N.
std::vector<MuntzPolynomial> difference_system(const ExponentSequence& seq, std::size_t N);

/// Coefficients p with Σ p_k u_k = Σ c_k t^{λ_k}: p_n = Σ_{k≥n} c_k.
std::vector<double> difference_coefficients(const std::vector<double>& c);

/// Σ p_k u_k, collected by exponent.
MuntzPolynomial expand_difference_combination(const std::vector<MuntzPolynomial>& u, const std::vector<double>& p);

struct CandidateSet {
    std::vector<TrigPolynomial> candidates;
    std::vector<std::pair<std::size_t, std::size_t>> sources;  // (function index, degree)
    std::vector<std::string> dropped;
};

/// s = U_m(f, Q) for each f and each m in `degrees`, keeping only candidates independent of
/// the ones kept before (relative residual above rank_tol after Gram-Schmidt).
CandidateSet build_candidates(const std::vector<RealFunction>& fs, const SummationMatrix& Q,
                              const std::vector<std::size_t>& degrees, double rank_tol = 1e-10);

/// Coefficient columns: 0 ↦ a0, 2k−1 ↦ a_k, 2k ↦ b_k.
struct StepSystem {
    std::vector<TrigPolynomial> rows;
    std::vector<std::size_t> lead;         // frequency of the leading column
    std::vector<std::size_t> high;         // degree
    std::vector<std::size_t> lead_column;  // first nonzero coefficient column
    /// rows = combination · inputs (coefficient space); empty for systems loaded from files.
    Eigen::MatrixXd combination;

    /// Recomputes lead/high/lead_column from the rows.
    static StepSystem from_rows(std::vector<TrigPolynomial> rows);
    std::size_t size() const noexcept { return rows.size(); }
};

struct ExclusionResult {
    StepSystem system;
    std::vector<std::size_t> rejected;  // input indices found dependent
};

/// Unit sup-norm scaling, column-wise elimination with the largest pivot (ties to the lowest
/// index), exact zeroing of eliminated and skipped entries, then sup-norm normalization.
ExclusionResult gaussian_exclusion(const std::vector<TrigPolynomial>& candidates, double pivot_tol = 1e-12);

/// Human-readable list of violated step-system invariants (empty when all hold).
std::vector<std::string> step_system_violations(const StepSystem& S, double norm_tol = 1e-9);

/// Max coefficient residual of reproducing each input from the output rows by least squares.
double span_residual(const std::vector<TrigPolynomial>& inputs, const StepSystem& S);

struct InclinationResult {
    double value = 1.0;        // min found of dist(f, span B)/‖f‖ (upper bound for the infimum)
    double lower_bound = 1.0;  // discrete LP value at the minimizer divided by ‖f‖_C
    std::vector<double> direction;
};

/// inf over f ∈ span A, ‖f‖_C = 1 of dist_C(f, span B). Multi-start (seeded directions plus
/// coordinate directions) followed by Nelder-Mead on the best 8.
InclinationResult inclination(const std::vector<TrigPolynomial>& A, const std::vector<TrigPolynomial>& B,
                              std::size_t grid = 0, std::uint64_t seed = 1, std::size_t starts = 64);

struct BasisReport {
    std::size_t L = 0;
    std::vector<std::size_t> lead_columns;
    std::vector<std::size_t> lead_frequencies;
    bool lead_columns_strict = false;
    bool lead_frequencies_strict = false;
    std::vector<std::pair<std::size_t, double>> s_curve;  // (degree n, max over probes of dist(x, T_n))
    bool s_nonincreasing = false;
    std::vector<double> inclinations;  // j = 1..L−1
    std::vector<double> inclination_lower;
    double inclination_floor = 0.0;
    double inclination_floor_refined = 0.0;  // doubled grid
    bool floor_stable = false;
    bool meets_half = false;
    std::vector<double> projection_norms;  // probe estimate of ‖P_j‖ on span of the first L rows
    bool projection_bound_ok = false;      // ‖P_j‖ ≤ 1/θ_j (+1e-6) for every j
};

BasisReport validate_basis_section(const StepSystem& S, std::size_t L, std::size_t probes, std::uint64_t seed,
                                   std::size_t grid = 0);

struct StepBuild {
    CandidateSet candidates;
    ExclusionResult exclusion;
};

/// Difference system of the first N exponents, periodized, summed by Q at the given degrees,
/// then reduced to a step system.
StepBuild build_step_system(const ExponentSequence& seq, std::size_t N, const SummationMatrix& Q,
                            const std::vector<std::size_t>& degrees, double pivot_tol = 1e-12);

}  // namespace muntz
