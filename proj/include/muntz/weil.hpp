#pragma once

#include "muntz/fourier.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace muntz {

enum class PsiRule { Power, InverseLog, Table };
enum class TableTail { None, Zero, Power };

/// Weight sequence ψ(k), k ≥ 1, with phase β (the derivative rotates harmonics by βπ/2).
///   Power:      ψ(k) = scale·k^{−r}
///   InverseLog: ψ(k) = 1/ln(k+1)
///   Table:      ψ(1..K) listed; beyond K the tail rule applies
///               (None: unknown, Zero: 0, Power: ψ(K)(K/k)^r).
class PsiWeight {
public:
    static PsiWeight power(double r, double beta, std::size_t K = 1024, double scale = 1.0);
    static PsiWeight inverse_log(double beta, std::size_t K = 1024);
    static PsiWeight table(std::vector<double> values, double beta, TableTail tail = TableTail::None,
                           double tail_r = 0.0);

    /// ψ(k) for k ≥ 1; TruncationError past the table when the tail is unknown.
    double operator()(std::size_t k) const;
    bool defined_at(std::size_t k) const noexcept;
    /// True when ψ(k) is known for every k (rule or table with a tail rule).
    bool has_tail() const noexcept;
    /// True when the rule makes ψ(k) vanish beyond K (finite kernel).
    bool finitely_supported() const noexcept;

    PsiRule rule() const noexcept { return rule_; }
    double r() const noexcept { return r_; }
    double scale() const noexcept { return scale_; }
    double beta() const noexcept { return beta_; }
    std::size_t K() const noexcept { return K_; }
    const std::vector<double>& values() const noexcept { return values_; }
    TableTail tail() const noexcept { return tail_; }

    PsiWeight with_beta(double beta) const;

private:
    PsiWeight() = default;
    PsiRule rule_ = PsiRule::Power;
    double r_ = 0.0;
    double scale_ = 1.0;
    double beta_ = 0.0;
    std::size_t K_ = 0;
    std::vector<double> values_;
    TableTail tail_ = TableTail::None;
};

/// (cos βπ/2, sin βπ/2), exact for integer β.
std::pair<double, double> phase_of(double beta);

struct PsiClassReport {
    bool in_F1 = false;
    bool positive_ok = false;
    bool vanishing_ok = false;
    bool convexity_ok = false;
    bool sum_ok = false;
    double partial_sum = 0.0;  // Σ_{k≤K} ψ(k)/k
    double tail_bound = 0.0;   // bound on Σ_{k>K} ψ(k)/k, +∞ if divergent or unknown
    std::string tail_method;   // "integral" | "zero" | "divergent" | "undecidable-tail"
    std::string reason;
};

/// Checks positivity, ψ → 0, Δ₂ψ(k) ≥ 0 for 2 ≤ k ≤ K−1, and Σψ(k)/k < ∞. Needs K ≥ 3.
PsiClassReport validate_psi_class(const PsiWeight& psi);

struct SeriesValue {
    std::complex<double> value;
    double error_bound = 0.0;
    bool certified = false;
    bool singular = false;
    std::size_t terms = 0;
};

/// S(x) = Σ_{k≥1} ψ(k) e^{2πikx}. Partial sum to K' terms plus a summation-by-parts tail
/// correction (or a bracketed integral tail at integer x). K' starts at max(K, min_terms)
/// and grows ×4 up to max_terms until the bound is below tol.
SeriesValue psi_exponential_sum(const PsiWeight& psi, double x, double tol = 1e-10, std::size_t min_terms = 1024,
                                std::size_t max_terms = 10'000'000);

struct KernelValue {
    double value = 0.0;
    double error_bound = 0.0;
    bool certified = false;
    bool singular = false;
    std::size_t terms = 0;
};

/// 𝒟_{ψ,β}(x) = Σ ψ(k) cos(2πkx + βπ/2). Singular points return value = +∞, singular = true.
KernelValue dpsi_kernel(const PsiWeight& psi, double x, double tol = 1e-10, std::size_t max_terms = 10'000'000);

/// Harmonic k ↦ rotate by βπ/2 and divide by ψ(k); constant term dropped.
FourierCoefficients weil_derivative(const FourierCoefficients& c, const PsiWeight& psi);
/// Inverse multiplier; d must have zero constant term. a0 is restored verbatim.
FourierCoefficients weil_reconstruct(const FourierCoefficients& d, const PsiWeight& psi, double a0);
/// ‖f^ψ_β‖_C
double weil_nagy_norm(const FourierCoefficients& c, const PsiWeight& psi, double tol = 1e-12);

/// Table of ψ₂(k)/ψ₁(k), k ≤ K, with phase β₂ − β₁.
PsiWeight psi_ratio(const PsiWeight& psi2, const PsiWeight& psi1, std::size_t K);

struct CompositionCheck {
    double discrepancy = 0.0;
    bool ok = false;
};

/// Compares (f^{ψ₁}_{β₁})^{ψ₂/ψ₁}_{β₂−β₁} with f^{ψ₂}_{β₂} coefficient-wise.
CompositionCheck compose_property_check(const FourierCoefficients& c, const PsiWeight& psi1, const PsiWeight& psi2,
                                        double tol = 1e-10);

struct RepresentationReport {
    double max_error = 0.0;
    std::size_t nodes = 0;
    std::size_t uncertified_nodes = 0;
    double kernel_error_integral = 0.0;  // Σ w_j·(kernel error bound at node j), times 2·‖f^ψ_β‖
};

/// f(x) vs a0/2 + 2∫₀¹ f^ψ_β(x+t)𝒟_{ψ,β}(t)dt at each x, with 𝒟 evaluated numerically on a
/// graded composite Gauss-Legendre rule.
RepresentationReport representation_check(const TrigPolynomial& f, const PsiWeight& psi,
                                          const std::vector<double>& xs, double kernel_tol = 1e-12,
                                          std::size_t kernel_terms = 1u << 20);

}  // namespace muntz
