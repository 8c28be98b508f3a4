#pragma once

#include "muntz/core.hpp"
#include "muntz/fourier.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace muntz {

/// f − S_{n−1}(f) sampled at j/1024. K is the coefficient truncation (default n−1).
SampledFunction rho_n(const RealFunction& f, std::size_t n, std::size_t K = 0, double tol = 1e-12);

struct ApproxOptions {
    std::size_t grid_m = 0;  // 0 means 32n; rounded up to a multiple of 2n
    std::size_t refinement_passes = 1;
    std::size_t scan_points = 0;  // continuous sup-norm scan; 0 means max(4096, 64n)
};

struct ApproxResult {
    std::size_t n = 0;
    double En = 0.0;     // = upper
    double lower = 0.0;  // discrete minimax value (dual certified)
    double upper = 0.0;  // continuous sup of the witness residual
    double certified_gap = 0.0;
    TrigPolynomial witness;  // degree ≤ n−1
    std::size_t grid_size = 0;
    std::size_t passes = 0;
    std::size_t lp_iterations = 0;
    std::size_t equioscillation_points = 0;
    bool equioscillation_ok = false;
};

/// E_n(f) = inf ‖f − T‖_C over trig polynomials of degree ≤ n−1 by discrete minimax LP
/// on a uniform grid, with refinement passes adding the residual's local maxima.
ApproxResult best_trig_approx(const RealFunction& f, std::size_t n, const ApproxOptions& options = {});

struct RateConfig {
    std::size_t N = 32;  // Müntz terms per test function
    double rho = 0.9;
    std::uint64_t seed = 0x5EED;
    std::size_t samples = 4;
    std::size_t grid_factor = 32;
};

struct RateRow {
    std::size_t n = 0;
    double En = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double statistic = 0.0;  // En·n^γ/ln n
    double running_max = 0.0;
};

struct RateTable {
    std::vector<RateRow> rows;
    double omega = 0.0;  // final running maximum
    double tail_slope = 0.0;  // least squares of statistic on ln n over the last quartile
    double tail_slope_se = 0.0;
    bool tail_nonincreasing = false;  // slope ≤ standard error
};

/// E_n(X) = max over the family, for each n in n_list (n ≥ 2).
RateTable rate_experiment(const std::vector<RealFunction>& family, double gamma, const std::vector<std::size_t>& n_list,
                          std::size_t grid_factor = 32);

/// Seeded family v = periodize(Σ ±ρ^k/λ_k t^{λ_k}) scaled to ‖v‖_C = 1.
std::vector<RealFunction> rate_family(const ExponentSequence& seq, const RateConfig& config);

/// Checks the gap and Müntz conditions (PreconditionError otherwise) and runs the experiment.
RateTable rate_experiment(const ExponentSequence& seq, double gamma, const std::vector<std::size_t>& n_list,
                          const RateConfig& config = {});

struct AsymptoticRow {
    double x = 0.0;
    double sin_sum = 0.0;
    double cos_sum = 0.0;
    double asymptote_sin = 0.0;
    double asymptote_cos = 0.0;
    double tail_bound = 0.0;
    double residual_sin = 0.0;  // |S − A − μx^α| / |S|
    double residual_cos = 0.0;
};

struct AsymptoticReport {
    double alpha = 0.0;
    std::size_t K = 0;
    std::vector<AsymptoticRow> rows;
    double mu = 0.0;
    double nu = 0.0;
    double max_residual_sin = 0.0;
    double max_residual_cos = 0.0;
    bool certified = false;  // every tail bound ≤ tail_tol
    // Diagnostic: cosine remainder fitted by c + ν'x^α.
    double aux_constant = 0.0;
    double aux_nu = 0.0;
    double aux_max_residual_cos = 0.0;
};

/// Σ_{n≤K} n^{−α} sin/cos(2πnx) (plus the summation-by-parts tail) against
/// (2πx)^{α−1}Γ(1−α)·cos(πα/2) resp. sin(πα/2), with μ, ν fitted on x^α.
AsymptoticReport asymptotic_check(double alpha, const std::vector<double>& xs, std::size_t K, double tail_tol = 1e-6);

}  // namespace muntz
