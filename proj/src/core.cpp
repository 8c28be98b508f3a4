#include "muntz/core.hpp"

#include "muntz/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace muntz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_strictly_increasing_positive(const std::vector<double>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || xs[i] <= 0.0) {
            throw DomainError("exponents must be finite and positive");
        }
        if (i > 0 && !(xs[i] > xs[i - 1])) {
            throw DomainError("exponents must be strictly increasing");
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// ExponentRule / ExponentSequence
// ---------------------------------------------------------------------------

double ExponentRule::generate(std::size_t k) const {
    const double kk = static_cast<double>(k);
    switch (kind) {
        case ExponentRuleKind::Power:
            return scale * std::pow(kk, parameter) + shift;
        case ExponentRuleKind::Geometric:
            return scale * std::pow(parameter, kk) + shift;
        case ExponentRuleKind::Explicit:
            break;
    }
    throw DomainError("explicit sequences have no generator");
}

ExponentSequence::ExponentSequence(std::vector<double> exponents, ExponentRule rule)
    : exponents_(std::move(exponents)), rule_(std::move(rule)) {
    require_strictly_increasing_positive(exponents_);
    alpha0_ = kInf;
    for (std::size_t i = 1; i < exponents_.size(); ++i) {
        alpha0_ = std::min(alpha0_, exponents_[i] - exponents_[i - 1]);
    }
    // Smallest terms first for accuracy.
    std::vector<double> inv;
    inv.reserve(exponents_.size());
    for (auto it = exponents_.rbegin(); it != exponents_.rend(); ++it) inv.push_back(1.0 / *it);
    alpha1_ = compensated_sum(inv);
}

ExponentSequence ExponentSequence::power(double p, std::size_t n) {
    ExponentRule rule;
    rule.kind = ExponentRuleKind::Power;
    rule.parameter = p;
    rule.terms = n;
    return from_rule(std::move(rule));
}

ExponentSequence ExponentSequence::geometric(double base, std::size_t n) {
    ExponentRule rule;
    rule.kind = ExponentRuleKind::Geometric;
    rule.parameter = base;
    rule.terms = n;
    return from_rule(std::move(rule));
}

ExponentSequence ExponentSequence::explicit_list(std::vector<double> exponents) {
    if (exponents.empty()) throw DegenerateInputError("empty exponent sequence");
    ExponentRule rule;
    rule.kind = ExponentRuleKind::Explicit;
    rule.terms = exponents.size();
    return ExponentSequence(std::move(exponents), std::move(rule));
}

ExponentSequence ExponentSequence::from_rule(ExponentRule rule) {
    if (rule.kind == ExponentRuleKind::Explicit) {
        throw DomainError("from_rule needs a generator; use explicit_list");
    }
    if (rule.kind == ExponentRuleKind::Power && !(rule.parameter > 0.0)) {
        throw DomainError("power rule needs p > 0");
    }
    if (rule.kind == ExponentRuleKind::Geometric && !(rule.parameter > 1.0)) {
        throw DomainError("geometric rule needs base > 1");
    }
    if (!(rule.scale > 0.0) || !(rule.shift >= 0.0)) {
        throw DomainError("rule needs scale > 0 and shift >= 0");
    }
    for (double e : rule.extra) {
        if (!std::isfinite(e) || e <= 0.0) throw DomainError("extra exponents must be positive");
    }
    if (rule.terms == 0 && rule.extra.empty()) {
        throw DegenerateInputError("empty exponent sequence");
    }
    // The truncation must reach past every extra exponent, otherwise gaps between an extra
    // value and an ungenerated rule value would be invisible.
    if (!rule.extra.empty()) {
        const double top = *std::max_element(rule.extra.begin(), rule.extra.end());
        while (rule.terms == 0 || rule.generate(rule.terms) < top) ++rule.terms;
    }
    std::vector<double> values;
    values.reserve(rule.terms + rule.extra.size());
    for (std::size_t k = 1; k <= rule.terms; ++k) values.push_back(rule.generate(k));
    values.insert(values.end(), rule.extra.begin(), rule.extra.end());
    std::sort(values.begin(), values.end());
    std::vector<double> merged;
    for (double v : values) {
        if (merged.empty() || std::abs(v - merged.back()) > 1e-14 * std::max(1.0, v)) {
            merged.push_back(v);
        }
    }
    return ExponentSequence(std::move(merged), std::move(rule));
}

ExponentSequence ExponentSequence::truncated(std::size_t n) const {
    if (rule_.kind == ExponentRuleKind::Explicit) {
        if (n > exponents_.size()) throw TruncationError("explicit sequence cannot be extended");
        return explicit_list(std::vector<double>(exponents_.begin(), exponents_.begin() + n));
    }
    ExponentRule rule = rule_;
    rule.terms = n;
    return from_rule(std::move(rule));
}

GapCondition check_gap_condition(const ExponentSequence& seq) {
    if (seq.size() < 2) throw DegenerateInputError("gap condition needs at least two exponents");
    GapCondition result;
    result.alpha0 = seq.gap_alpha0();
    const auto& rule = seq.rule();
    switch (rule.kind) {
        case ExponentRuleKind::Power:
            result.decided_by_rule = true;
            // Gaps scale·((k+1)^p − k^p) are nondecreasing for p ≥ 1 and tend to 0 for p < 1.
            result.holds = rule.parameter >= 1.0 && result.alpha0 > 0.0;
            break;
        case ExponentRuleKind::Geometric:
            result.decided_by_rule = true;
            result.holds = result.alpha0 > 0.0;
            break;
        case ExponentRuleKind::Explicit:
            result.holds = result.alpha0 > 0.0;
            break;
    }
    return result;
}

bool MuntzSum::condition_holds() const noexcept { return std::isfinite(alpha1) && std::isfinite(tail); }

MuntzSum muntz_sum(const ExponentSequence& seq) {
    MuntzSum result;
    result.alpha1 = seq.muntz_sum_alpha1();
    const auto& rule = seq.rule();
    const double n = static_cast<double>(rule.terms);
    switch (rule.kind) {
        case ExponentRuleKind::Power:
            // Σ_{k>N} 1/(s k^p + shift) ≤ ∫_N^∞ dx/(s x^p)
            result.tail = rule.parameter > 1.0
                              ? std::pow(n, 1.0 - rule.parameter) / (rule.scale * (rule.parameter - 1.0))
                              : kInf;
            break;
        case ExponentRuleKind::Geometric:
            result.tail = std::pow(rule.parameter, -n) / (rule.scale * (rule.parameter - 1.0));
            break;
        case ExponentRuleKind::Explicit:
            result.tail = kInf;
            break;
    }
    return result;
}

// ---------------------------------------------------------------------------
// MuntzPolynomial
// ---------------------------------------------------------------------------

MuntzPolynomial::MuntzPolynomial(std::vector<MuntzTerm> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end(),
              [](const MuntzTerm& a, const MuntzTerm& b) { return a.exponent < b.exponent; });
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!std::isfinite(terms_[i].exponent) || terms_[i].exponent <= 0.0) {
            throw DomainError("Müntz exponents must be positive");
        }
        if (!std::isfinite(terms_[i].coefficient)) throw DomainError("non-finite coefficient");
        if (i > 0 && terms_[i].exponent == terms_[i - 1].exponent) {
            throw DomainError("duplicate exponent in Müntz polynomial");
        }
    }
}

MuntzPolynomial MuntzPolynomial::monomial(double exponent, double coefficient) {
    return MuntzPolynomial({{exponent, coefficient}});
}

MuntzPolynomial MuntzPolynomial::from_sequence(const ExponentSequence& seq,
                                               std::span<const double> coefficients) {
    if (coefficients.size() > seq.size()) throw ShapeError("more coefficients than exponents");
    std::vector<MuntzTerm> terms;
    terms.reserve(coefficients.size());
    for (std::size_t i = 0; i < coefficients.size(); ++i) terms.push_back({seq[i], coefficients[i]});
    return MuntzPolynomial(std::move(terms));
}

std::vector<double> MuntzPolynomial::exponents() const {
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.exponent);
    return out;
}

std::vector<double> MuntzPolynomial::coefficients() const {
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.coefficient);
    return out;
}

double MuntzPolynomial::operator()(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("Müntz polynomial evaluated outside [0,1]");
    if (t == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& term : terms_) sum += term.coefficient * std::pow(t, term.exponent);
    return sum;
}

double MuntzPolynomial::derivative(double t) const {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("derivative evaluated outside (0,1]");
    double sum = 0.0;
    for (const auto& term : terms_) {
        sum += term.coefficient * term.exponent * std::pow(t, term.exponent - 1.0);
    }
    return sum;
}

bool MuntzPolynomial::has_integer_exponents() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const MuntzTerm& t) {
        return t.exponent == std::floor(t.exponent) && t.exponent < 1e9;
    });
}

std::complex<double> MuntzPolynomial::evaluate_complex(std::complex<double> z) const {
    if (!has_integer_exponents()) throw DomainError("complex evaluation needs integer exponents");
    std::complex<double> sum = 0.0;
    for (const auto& term : terms_) {
        sum += term.coefficient * std::pow(z, static_cast<int>(term.exponent));
    }
    return sum;
}

MuntzPolynomial MuntzPolynomial::substitute_power(double alpha) const {
    if (!(alpha > 0.0)) throw DomainError("substitution t -> t^alpha needs alpha > 0");
    std::vector<MuntzTerm> out = terms_;
    for (auto& t : out) t.exponent *= alpha;
    return MuntzPolynomial(std::move(out));
}

double MuntzPolynomial::sum_of_coefficients() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coefficient;
    return s;
}

double MuntzPolynomial::sum_of_abs_coefficients() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coefficient);
    return s;
}

MuntzPolynomial MuntzPolynomial::scaled(double c) const {
    std::vector<MuntzTerm> out = terms_;
    for (auto& t : out) t.coefficient *= c;
    return MuntzPolynomial(std::move(out));
}

namespace {

MuntzPolynomial combine(const MuntzPolynomial& a, const MuntzPolynomial& b, double sign) {
    std::vector<MuntzTerm> out;
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].exponent < y[j].exponent)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].exponent < x[i].exponent) {
            out.push_back({y[j].exponent, sign * y[j].coefficient});
            ++j;
        } else {
            out.push_back({x[i].exponent, x[i].coefficient + sign * y[j].coefficient});
            ++i;
            ++j;
        }
    }
    return MuntzPolynomial(std::move(out));
}

}  // namespace

MuntzPolynomial operator+(const MuntzPolynomial& a, const MuntzPolynomial& b) { return combine(a, b, 1.0); }
MuntzPolynomial operator-(const MuntzPolynomial& a, const MuntzPolynomial& b) { return combine(a, b, -1.0); }

// ---------------------------------------------------------------------------
// Grid / SampledFunction
// ---------------------------------------------------------------------------

Grid::Grid(std::vector<double> points, GridScheme scheme) : points_(std::move(points)), scheme_(scheme) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i] >= 0.0 && points_[i] <= 1.0)) throw DomainError("grid point outside [0,1]");
        if (i > 0 && !(points_[i] > points_[i - 1])) throw DomainError("grid points must be sorted and distinct");
    }
}

Grid Grid::uniform(std::size_t n) {
    if (n < 2) throw DegenerateInputError("uniform grid needs at least two points");
    std::vector<double> pts(n);
    for (std::size_t j = 0; j < n; ++j) pts[j] = static_cast<double>(j) / static_cast<double>(n - 1);
    return Grid(std::move(pts), GridScheme::Uniform);
}

Grid Grid::uniform_periodic(std::size_t n) {
    if (n < 1) throw DegenerateInputError("periodic grid needs at least one point");
    std::vector<double> pts(n);
    for (std::size_t j = 0; j < n; ++j) pts[j] = static_cast<double>(j) / static_cast<double>(n);
    return Grid(std::move(pts), GridScheme::Uniform);
}

Grid Grid::endpoint_refined(std::size_t n) {
    if (n < 2) throw DegenerateInputError("Chebyshev grid needs at least two points");
    std::vector<double> pts(n);
    for (std::size_t j = 0; j < n; ++j) {
        pts[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n - 1)));
    }
    pts.front() = 0.0;
    pts.back() = 1.0;
    return Grid(std::move(pts), GridScheme::EndpointRefined);
}

Grid Grid::from_points(std::vector<double> points, GridScheme scheme) { return Grid(std::move(points), scheme); }

void SampledFunction::validate(double periodic_tol) const {
    if (values.size() != grid.size()) throw ShapeError("sample count does not match grid");
    if (periodic && grid.size() >= 2 && grid.points().front() == 0.0 && grid.points().back() == 1.0) {
        if (std::abs(values.front() - values.back()) > periodic_tol) {
            throw DomainError("periodic samples differ at 0 and 1");
        }
    }
}

SampledFunction sample(const RealFunction& f, const Grid& grid, bool periodic) {
    SampledFunction out{grid, {}, periodic};
    out.values.reserve(grid.size());
    for (double x : grid.points()) {
        const double v = f(x);
        if (!std::isfinite(v)) throw EvaluationError("non-finite sample");
        out.values.push_back(v);
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Sup norm
// ---------------------------------------------------------------------------

namespace {

struct Probe {
    double x;
    double value;
};

double abs_checked(const RealFunction& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw EvaluationError("non-finite value in sup-norm scan");
    return std::abs(v);
}

Probe golden_max(const RealFunction& f, double lo, double hi, Probe best, double refine) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = abs_checked(f, x1);
    double f2 = abs_checked(f, x2);
    for (int it = 0; it < 200 && hi - lo > refine; ++it) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = abs_checked(f, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = abs_checked(f, x2);
        }
        if (f1 > best.value) best = {x1, f1};
        if (f2 > best.value) best = {x2, f2};
    }
    return best;
}

}  // namespace

SupNorm sup_norm(const RealFunction& f, double a, double b, const SupNormOptions& options) {
    if (!(a < b)) throw DomainError("sup_norm needs a < b");
    const std::size_t n = std::max<std::size_t>(options.scan_points, 3);
    std::vector<double> xs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = static_cast<double>(j) / static_cast<double>(n - 1);
        const double u = options.scheme == GridScheme::Uniform ? s : 0.5 * (1.0 - std::cos(std::numbers::pi * s));
        xs[j] = a + (b - a) * u;
    }
    xs.front() = a;
    xs.back() = b;
    std::vector<double> vs(n);
    for (std::size_t j = 0; j < n; ++j) vs[j] = abs_checked(f, xs[j]);

    std::vector<std::size_t> peaks;
    for (std::size_t j = 0; j < n; ++j) {
        const bool left_ok = j == 0 || vs[j] >= vs[j - 1];
        const bool right_ok = j + 1 == n || vs[j] >= vs[j + 1];
        if (left_ok && right_ok) peaks.push_back(j);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t i, std::size_t j) { return vs[i] > vs[j]; });
    if (peaks.size() > options.candidates) peaks.resize(options.candidates);

    Probe best{xs[0], vs[0]};
    for (std::size_t j = 1; j < n; ++j) {
        if (vs[j] > best.value) best = {xs[j], vs[j]};
    }
    for (std::size_t j : peaks) {
        const double lo = xs[j == 0 ? 0 : j - 1];
        const double hi = xs[j + 1 == n ? n - 1 : j + 1];
        best = golden_max(f, lo, hi, best, options.refine);
    }
    return {best.value, best.x};
}

SupNorm sup_norm(const RealFunction& f, const SupNormOptions& options) { return sup_norm(f, 0.0, 1.0, options); }

double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double c = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    return sum + c;
}

}  // namespace muntz
