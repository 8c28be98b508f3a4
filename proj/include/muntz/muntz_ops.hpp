#pragma once

#include "muntz/core.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace muntz {

// ---------------------------------------------------------------------------
// Remez-type constant
// ---------------------------------------------------------------------------

/// ‖h‖_{C[0,δ]} / ‖h‖_{C[δ,1]}
double remez_ratio(const MuntzPolynomial& h, double delta, std::size_t scan_points = 1024);

struct RemezEta {
    double eta_lower = 0.0;
    std::size_t samples_used = 0;
    std::size_t skipped = 0;
    std::vector<double> running_max;  // after each sample
    MuntzPolynomial maximizer;
};

/// Running maximum of the ratio over seeded polynomials with standard normal coefficients
/// on the first `terms` exponents. Sample i draws from substream (seed, i).
RemezEta remez_eta_estimate(const ExponentSequence& seq, double delta, std::size_t samples, std::uint64_t seed,
                            std::size_t terms = 8);

// ---------------------------------------------------------------------------
// Exponent transforms and shifts
// ---------------------------------------------------------------------------

/// {αλ + β : λ ∈ Λ} ∪ Ξ, duplicates merged. Generator rules are carried through.
ExponentSequence transform_exponents(const ExponentSequence& seq, double alpha, double beta,
                                     const std::vector<double>& extra = {});

class ExponentShiftPlan {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// `reference` supplies λ_m in the bound; empty means the source exponents.
    ExponentShiftPlan(std::vector<double> source, std::vector<double> target, std::vector<double> reference = {});

    const std::vector<double>& source() const noexcept { return source_; }
    const std::vector<double>& target() const noexcept { return target_; }
    const std::vector<double>& reference() const noexcept { return reference_; }
    const std::vector<double>& delta() const noexcept { return delta_; }
    /// First index with nonzero shift (0-based), npos when every shift is zero.
    std::size_t m() const noexcept { return m_; }
    /// Δ_m / λ_m, 0 when every shift is zero.
    double ratio() const;

private:
    std::vector<double> source_;
    std::vector<double> target_;
    std::vector<double> reference_;
    std::vector<double> delta_;
    std::size_t m_ = npos;
};

enum class Admissibility { Monomial, NonnegativeCoefficients, BoundedAbsSum, Observe };

std::string to_string(Admissibility a);
Admissibility classify_admissibility(const MuntzPolynomial& p);

struct ShiftResult {
    MuntzPolynomial shifted;
    double norm = 0.0;    // ‖p‖_C
    double bound = 0.0;   // 4‖p‖Δ_m/λ_m
    double actual = 0.0;  // ‖p − p1‖_C
    Admissibility admissibility = Admissibility::Observe;
    bool holds() const noexcept { return actual <= bound; }
};

/// Moves each coefficient of p from source exponent to target exponent.
ShiftResult exponent_shift_operator(const MuntzPolynomial& p, const ExponentShiftPlan& plan);

struct ChainResult {
    MuntzPolynomial final_polynomial;
    std::vector<ShiftResult> steps;
    double cumulative_bound = 0.0;  // Σ per-step bounds
    double actual = 0.0;            // ‖p − final‖_C
    double ratio_sum = 0.0;         // Σ Δ_m/λ_m
    double delta = 0.0;             // max total shift
    double cap = 0.0;               // δ·Σ 1/λ_n over the first reference
    bool hypothesis_holds = false;  // δ < (8 Σ 1/λ_n)^{−1}
};

/// Applies plans in order; each target must equal the next source. δ defaults to the max total shift.
ChainResult compose_shift_chain(const MuntzPolynomial& p, const std::vector<ExponentShiftPlan>& plans,
                                double delta = std::numeric_limits<double>::quiet_NaN());

// ---------------------------------------------------------------------------
// Weak L_s and derivative diagnostics
// ---------------------------------------------------------------------------

struct WeakNormOptions {
    std::size_t scan = 1u << 20;
    double stability_tol = 1e-3;
};

struct WeakNorm {
    double value = 0.0;    // (sup_y y^s μ{|f| ≥ y})^{1/s}
    double level = 0.0;    // maximizing y
    double measure = 0.0;  // μ{|f| ≥ level}
    bool stabilized = false;
};

/// Level-set measures from a midpoint scan (endpoints never evaluated), refined by bisection
/// at the crossings of the best level.
WeakNorm weak_norm(const RealFunction& f, double a, double b, double s, const WeakNormOptions& options = {});

struct DerivativeReport {
    double weak_norm_value = 0.0;
    bool weak_norm_stabilized = false;
    bool disc_checked = false;
    double cauchy_G = 0.0;
    bool pointwise_bound_ok = false;
    double worst_x = 0.0;
    double worst_ratio = 0.0;  // max |p′(x)|·2π(1−x)/G
    std::string note;
};

/// Weak-L₁ norm of p′ on (0,1); for integer exponents G = max |p| on |z − 1/2| ≤ 1/2 and the
/// check |p′(x)| ≤ G/(2π(1−x)) on 2000 points of (3/4,1).
DerivativeReport derivative_weak_l1_check(const MuntzPolynomial& p);

/// v(t) = p(t) + (p(0) − p(1))·t on [0,1), extended with period 1.
struct Periodized {
    MuntzPolynomial p;
    double slope = 0.0;
    double operator()(double x) const {
        const double t = x - std::floor(x);
        return p(t) + slope * t;
    }
};

Periodized periodize(const MuntzPolynomial& p);

}  // namespace muntz
