#pragma once

#include "muntz/core.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace muntz {

struct Harmonic {
    double a = 0.0;  // cos(2πkx) coefficient
    double b = 0.0;  // sin(2πkx) coefficient
};

/// p(x) = a0/2 + Σ_{k=1}^{deg} (a_k cos 2πkx + b_k sin 2πkx), 1-periodic.
class TrigPolynomial {
public:
    TrigPolynomial() = default;
    TrigPolynomial(double a0, std::vector<Harmonic> harmonics);

    static TrigPolynomial constant(double value) { return TrigPolynomial(2.0 * value, {}); }
    static TrigPolynomial cosine(std::size_t k, double amplitude = 1.0);
    static TrigPolynomial sine(std::size_t k, double amplitude = 1.0);
    /// Inverse of coefficient_vector().
    static TrigPolynomial from_coefficient_vector(const std::vector<double>& v);

    double a0() const noexcept { return a0_; }
    const std::vector<Harmonic>& harmonics() const noexcept { return harmonics_; }
    std::size_t degree() const noexcept { return harmonics_.size(); }
    Harmonic harmonic(std::size_t k) const;  // zero beyond the degree; k ≥ 1

    double operator()(double x) const;

    /// Trailing zero harmonics removed.
    TrigPolynomial normalized() const;
    /// [a0, a1, b1, a2, b2, ...]
    std::vector<double> coefficient_vector() const;

    TrigPolynomial scaled(double c) const;
    /// x ↦ p(x + h)
    TrigPolynomial shifted(double h) const;
    friend TrigPolynomial operator+(const TrigPolynomial& p, const TrigPolynomial& q);
    friend TrigPolynomial operator-(const TrigPolynomial& p, const TrigPolynomial& q);

private:
    double a0_ = 0.0;
    std::vector<Harmonic> harmonics_;
};

/// Sup norm over one period (uniform scan of max(4096, 32·deg) points plus refinement).
SupNorm trig_sup_norm(const TrigPolynomial& p, double refine = 1e-12);

// ---------------------------------------------------------------------------
// Summation methods
// ---------------------------------------------------------------------------

enum class SummationKind { Dirichlet, Fejer, ValleePoussin, Explicit };

/// Lower-triangular matrix q_{n,k}, 0 ≤ k ≤ n.
class SummationMatrix {
public:
    static SummationMatrix dirichlet();
    static SummationMatrix fejer();
    /// q_{n,k} = 1 for k ≤ m = ⌊n/2⌋, then linear decay (n+1−k)/(n+1−m).
    static SummationMatrix vallee_poussin();
    static SummationMatrix explicit_rows(std::vector<std::vector<double>> rows);
    /// "dirichlet" | "fejer" | "vallee-poussin"
    static SummationMatrix from_name(const std::string& name);

    SummationKind kind() const noexcept { return kind_; }
    std::string name() const;
    /// Row n (length n+1); throws MatrixError when undefined.
    std::vector<double> row(std::size_t n) const;

private:
    explicit SummationMatrix(SummationKind kind) : kind_(kind) {}
    SummationKind kind_;
    std::vector<std::vector<double>> rows_;
};

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

enum class Provenance { Exact, Quadrature, Sampled };

/// a0 = 2∫f, a_k = 2∫f cos 2πkt, b_k = 2∫f sin 2πkt, k = 1..K.
struct FourierCoefficients {
    double a0 = 0.0;
    std::vector<Harmonic> harmonics;
    Provenance provenance = Provenance::Exact;
    double tol = 0.0;

    std::size_t K() const noexcept { return harmonics.size(); }
    TrigPolynomial as_polynomial() const { return TrigPolynomial(a0, harmonics); }
};

/// Coefficients of a trig polynomial, zero-padded or cut to K.
FourierCoefficients exact_coefficients(const TrigPolynomial& p, std::size_t K);
/// Composite Gauss-Legendre, panels doubled until the coefficients change by ≤ tol.
FourierCoefficients fourier_coefficients(const RealFunction& f, std::size_t K, double tol = 1e-12);
/// Trapezoid rule on a periodic uniform grid (exact for degree < n − K).
FourierCoefficients fourier_coefficients(const SampledFunction& f, std::size_t K);

TrigPolynomial partial_sum(const FourierCoefficients& c, std::size_t n);
TrigPolynomial summation_apply(const FourierCoefficients& c, const SummationMatrix& Q, std::size_t n);
/// U_n(x,Q) = q_{n,0}/2 + Σ q_{n,k} cos 2πkx
TrigPolynomial kernel(const SummationMatrix& Q, std::size_t n);

/// (h*g)(x) = 2∫₀¹ h(x−t) g(t) dt by adaptive quadrature split at t = frac(x).
double convolve_periodic(const RealFunction& h, const RealFunction& g, double x, double tol = 1e-10);
/// Exact convolution of trig polynomials under the same normalization.
TrigPolynomial convolve(const TrigPolynomial& h, const TrigPolynomial& u);

/// ∫₀¹ |p|, panels split at the sign changes of p.
double l1_norm(const TrigPolynomial& p, double tol = 1e-10);
/// 2∫₀¹ |U_n(t,Q)| dt
double lebesgue_constant(const SummationMatrix& Q, std::size_t n, double tol = 1e-10);

struct ConvergenceRow {
    std::size_t n = 0;
    double error = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    bool strictly_decreasing = false;
    /// Least-squares slope of log(error) against log(n) over rows with error > 0; NaN if < 2 such rows.
    double loglog_slope = 0.0;
};

/// ‖U_n(f,Q) − f‖_C for each n; coefficients to K = 4·max(n) unless K is given.
ConvergenceTable convergence_experiment(const RealFunction& f, const SummationMatrix& Q,
                                        const std::vector<std::size_t>& n_list, std::size_t K = 0,
                                        double tol = 1e-12);

}  // namespace muntz
