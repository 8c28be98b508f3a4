#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace muntz {

using RealFunction = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Exponent sequences
// ---------------------------------------------------------------------------

enum class ExponentRuleKind { Explicit, Power, Geometric };

/// Generator λ_k = scale·g(k) + shift with g(k) = k^p (Power) or base^k (Geometric).
/// `terms` is how many generated values are present in the truncation.
struct ExponentRule {
    ExponentRuleKind kind = ExponentRuleKind::Explicit;
    double parameter = 0.0;  // p for Power, base for Geometric
    double scale = 1.0;
    double shift = 0.0;
    std::size_t terms = 0;
    std::vector<double> extra;  // finitely many exponents merged into the generated ones

    double generate(std::size_t k) const;  // k is 1-based
};

/// Finite truncation of an increasing sequence of positive exponents Λ, optionally
/// tied to a generator rule so that "infinite" claims can be certified with a tail bound.
class ExponentSequence {
public:
    /// λ_k = k^p, k = 1..n.
    static ExponentSequence power(double p, std::size_t n);
    /// λ_k = base^k, k = 1..n.
    static ExponentSequence geometric(double base, std::size_t n);
    /// Arbitrary strictly increasing positive list; no tail information.
    static ExponentSequence explicit_list(std::vector<double> exponents);
    /// General rule-based constructor (affine transforms of generators plus extras).
    static ExponentSequence from_rule(ExponentRule rule);

    const std::vector<double>& exponents() const noexcept { return exponents_; }
    std::size_t size() const noexcept { return exponents_.size(); }
    double operator[](std::size_t i) const { return exponents_.at(i); }
    const ExponentRule& rule() const noexcept { return rule_; }

    /// min_i (λ_{i+1} − λ_i) over the truncation; +∞ for fewer than two exponents.
    double gap_alpha0() const noexcept { return alpha0_; }
    /// Σ 1/λ_k over the truncation.
    double muntz_sum_alpha1() const noexcept { return alpha1_; }

    /// Same rule with a different truncation length (explicit lists are cut, not extended).
    ExponentSequence truncated(std::size_t n) const;

private:
    ExponentSequence(std::vector<double> exponents, ExponentRule rule);

    std::vector<double> exponents_;
    ExponentRule rule_;
    double alpha0_ = 0.0;
    double alpha1_ = 0.0;
};

struct GapCondition {
    bool holds = false;
    double alpha0 = 0.0;
    bool decided_by_rule = false;
};

/// Gap condition inf(λ_{k+1} − λ_k) > 0. Rules with nondecreasing gaps decide on the rule.
GapCondition check_gap_condition(const ExponentSequence& seq);

struct MuntzSum {
    double alpha1 = 0.0;
    /// Rigorous bound on Σ_{k>N} 1/λ_k, +∞ when no rule bound exists or the series diverges.
    double tail = 0.0;
    bool condition_holds() const noexcept;
};

MuntzSum muntz_sum(const ExponentSequence& seq);

// ---------------------------------------------------------------------------
// Müntz polynomials
// ---------------------------------------------------------------------------

struct MuntzTerm {
    double exponent = 0.0;
    double coefficient = 0.0;
};

/// f(t) = Σ a_n t^{λ_n} on [0,1]; exponents positive, distinct and ascending.
class MuntzPolynomial {
public:
    MuntzPolynomial() = default;
    explicit MuntzPolynomial(std::vector<MuntzTerm> terms);

    static MuntzPolynomial monomial(double exponent, double coefficient = 1.0);
    /// Coefficients on the first coefficients.size() exponents of seq.
    static MuntzPolynomial from_sequence(const ExponentSequence& seq, std::span<const double> coefficients);

    const std::vector<MuntzTerm>& terms() const noexcept { return terms_; }
    std::vector<double> exponents() const;
    std::vector<double> coefficients() const;
    bool empty() const noexcept { return terms_.empty(); }

    /// Throws DomainError outside [0,1].
    double operator()(double t) const;
    /// f'(t) for t ∈ (0,1]; term-wise λ a t^{λ−1}.
    double derivative(double t) const;
    /// Analytic continuation for integer exponents (used on the disc |z − 1/2| ≤ 1/2).
    std::complex<double> evaluate_complex(std::complex<double> z) const;
    bool has_integer_exponents() const;

    /// f(t^α): exponents multiplied by α.
    MuntzPolynomial substitute_power(double alpha) const;

    double sum_of_coefficients() const;
    double sum_of_abs_coefficients() const;

    MuntzPolynomial scaled(double c) const;
    friend MuntzPolynomial operator+(const MuntzPolynomial& a, const MuntzPolynomial& b);
    friend MuntzPolynomial operator-(const MuntzPolynomial& a, const MuntzPolynomial& b);

private:
    std::vector<MuntzTerm> terms_;
};

// ---------------------------------------------------------------------------
// Grids and samples
// ---------------------------------------------------------------------------

enum class GridScheme { Uniform, EndpointRefined };

class Grid {
public:
    /// n points j/(n−1), both endpoints included.
    static Grid uniform(std::size_t n);
    /// n points j/n, right endpoint excluded (one period of a 1-periodic function).
    static Grid uniform_periodic(std::size_t n);
    /// Chebyshev-Lobatto points mapped to [0,1].
    static Grid endpoint_refined(std::size_t n);
    /// Arbitrary sorted, distinct points in [0,1].
    static Grid from_points(std::vector<double> points, GridScheme scheme);

    const std::vector<double>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    GridScheme scheme() const noexcept { return scheme_; }

private:
    Grid(std::vector<double> points, GridScheme scheme);
    std::vector<double> points_;
    GridScheme scheme_;
};

struct SampledFunction {
    Grid grid;
    std::vector<double> values;
    bool periodic = false;

    /// Checks the length and the periodic endpoint invariants.
    void validate(double periodic_tol = 1e-9) const;
};

SampledFunction sample(const RealFunction& f, const Grid& grid, bool periodic);

// ---------------------------------------------------------------------------
// Sup norm
// ---------------------------------------------------------------------------

struct SupNormOptions {
    std::size_t scan_points = 4096;
    std::size_t candidates = 8;
    double refine = 1e-9;
    GridScheme scheme = GridScheme::EndpointRefined;
};

struct SupNorm {
    double norm = 0.0;
    double argmax = 0.0;
};

/// max |f| on [a,b]: scan, then golden-section refinement around the best local maxima.
SupNorm sup_norm(const RealFunction& f, double a, double b, const SupNormOptions& options = {});
SupNorm sup_norm(const RealFunction& f, const SupNormOptions& options = {});

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

}  // namespace muntz
