#include "muntz/muntz_ops.hpp"

#include "muntz/error.hpp"
#include "muntz/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace muntz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool same_exponent(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace

// ---------------------------------------------------------------------------
// Remez-type constant
// ---------------------------------------------------------------------------

double remez_ratio(const MuntzPolynomial& h, double delta, std::size_t scan_points) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
    SupNormOptions options;
    options.scan_points = scan_points;
    const RealFunction f = [&h](double t) { return h(t); };
    const double num = sup_norm(f, 0.0, delta, options).norm;
    const double den = sup_norm(f, delta, 1.0, options).norm;
    return num / den;
}

RemezEta remez_eta_estimate(const ExponentSequence& seq, double delta, std::size_t samples, std::uint64_t seed,
                            std::size_t terms) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
    if (!muntz_sum(seq).condition_holds()) throw PreconditionError("exponents fail the Müntz condition");
    const std::size_t N = std::min(terms, seq.size());
    if (N == 0) throw DegenerateInputError("no exponents");
    RemezEta out;
    double best = 0.0;
    SupNormOptions options;
    options.scan_points = 1024;
    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng = Rng::substream(seed, s);
        std::vector<MuntzTerm> t;
        for (std::size_t k = 0; k < N; ++k) t.push_back({seq[k], rng.normal()});
        MuntzPolynomial h(std::move(t));
        const RealFunction f = [&h](double x) { return h(x); };
        const double den = sup_norm(f, delta, 1.0, options).norm;
        if (den < 1e-14) {
            ++out.skipped;
            out.running_max.push_back(best);
            continue;
        }
        const double ratio = sup_norm(f, 0.0, delta, options).norm / den;
        ++out.samples_used;
        if (ratio > best) {
            best = ratio;
            out.maximizer = h;
        }
        out.running_max.push_back(best);
    }
    out.eta_lower = best;
    return out;
}

// ---------------------------------------------------------------------------
// Exponent transforms
// ---------------------------------------------------------------------------

ExponentSequence transform_exponents(const ExponentSequence& seq, double alpha, double beta,
                                     const std::vector<double>& extra) {
    if (!(alpha > 0.0)) throw DomainError("transform needs alpha > 0");
    if (!(beta >= 0.0)) throw DomainError("transform needs beta >= 0");
    const ExponentRule& rule = seq.rule();
    if (rule.kind == ExponentRuleKind::Explicit) {
        std::vector<double> v;
        for (double x : seq.exponents()) v.push_back(alpha * x + beta);
        v.insert(v.end(), extra.begin(), extra.end());
        std::sort(v.begin(), v.end());
        std::vector<double> merged;
        for (double x : v) {
            if (merged.empty() || !same_exponent(x, merged.back())) merged.push_back(x);
        }
        return ExponentSequence::explicit_list(std::move(merged));
    }
    ExponentRule out = rule;
    out.scale = alpha * rule.scale;
    out.shift = alpha * rule.shift + beta;
    out.extra.clear();
    for (double x : rule.extra) out.extra.push_back(alpha * x + beta);
    out.extra.insert(out.extra.end(), extra.begin(), extra.end());
    return ExponentSequence::from_rule(std::move(out));
}

// ---------------------------------------------------------------------------
// Shift plans
// ---------------------------------------------------------------------------

ExponentShiftPlan::ExponentShiftPlan(std::vector<double> source, std::vector<double> target,
                                     std::vector<double> reference)
    : source_(std::move(source)), target_(std::move(target)), reference_(std::move(reference)) {
    if (source_.size() != target_.size()) throw ShapeError("source and target lengths differ");
    if (reference_.empty()) reference_ = source_;
    if (reference_.size() < source_.size()) throw ShapeError("reference sequence is shorter than the plan");
    for (std::size_t i = 0; i < target_.size(); ++i) {
        if (!(source_[i] > 0.0) || !(target_[i] > 0.0)) throw DomainError("exponents must be positive");
        if (i > 0 && !(target_[i] > target_[i - 1])) throw DomainError("target exponents must be strictly increasing");
        if (i > 0 && !(source_[i] > source_[i - 1])) throw DomainError("source exponents must be strictly increasing");
    }
    delta_.resize(source_.size());
    double last = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < source_.size(); ++i) {
        delta_[i] = target_[i] - source_[i];
        if (delta_[i] < 0.0) throw DomainError("shifts must be nonnegative");
        if (delta_[i] > 0.0) {
            if (m_ == npos) m_ = i;
            if (delta_[i] > last * (1.0 + 1e-12)) throw DomainError("nonzero shifts must be nonincreasing");
            last = delta_[i];
        }
    }
}

double ExponentShiftPlan::ratio() const {
    if (m_ == npos) return 0.0;
    return delta_[m_] / reference_[m_];
}

std::string to_string(Admissibility a) {
    switch (a) {
        case Admissibility::Monomial: return "monomial";
        case Admissibility::NonnegativeCoefficients: return "nonnegative-coefficients";
        case Admissibility::BoundedAbsSum: return "bounded-abs-sum";
        case Admissibility::Observe: return "observe";
    }
    return "observe";
}

Admissibility classify_admissibility(const MuntzPolynomial& p) {
    if (p.terms().size() == 1) return Admissibility::Monomial;
    const auto c = p.coefficients();
    if (std::all_of(c.begin(), c.end(), [](double x) { return x >= 0.0; })) return Admissibility::NonnegativeCoefficients;
    const double norm = sup_norm([&p](double t) { return p(t); }).norm;
    if (p.sum_of_abs_coefficients() <= 2.0 * norm) return Admissibility::BoundedAbsSum;
    return Admissibility::Observe;
}

ShiftResult exponent_shift_operator(const MuntzPolynomial& p, const ExponentShiftPlan& plan) {
    const auto& terms = p.terms();
    if (terms.size() != plan.source().size()) throw ShapeError("polynomial and plan have different lengths");
    std::vector<MuntzTerm> shifted;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!same_exponent(terms[i].exponent, plan.source()[i])) throw ShapeError("polynomial exponents differ from plan source");
        shifted.push_back({plan.target()[i], terms[i].coefficient});
    }
    ShiftResult out;
    out.shifted = MuntzPolynomial(std::move(shifted));
    out.norm = sup_norm([&p](double t) { return p(t); }).norm;
    out.bound = 4.0 * out.norm * plan.ratio();
    const MuntzPolynomial& q = out.shifted;
    out.actual = plan.m() == ExponentShiftPlan::npos ? 0.0 : sup_norm([&](double t) { return p(t) - q(t); }).norm;
    out.admissibility = classify_admissibility(p);
    return out;
}

ChainResult compose_shift_chain(const MuntzPolynomial& p, const std::vector<ExponentShiftPlan>& plans, double delta) {
    ChainResult out;
    out.final_polynomial = p;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        if (i > 0) {
            const auto& prev = plans[i - 1].target();
            const auto& next = plans[i].source();
            if (prev.size() != next.size()) throw ShapeError("chained plans have different lengths");
            for (std::size_t j = 0; j < prev.size(); ++j) {
                if (!same_exponent(prev[j], next[j])) throw ShapeError("plan target does not match the next source");
            }
        }
        ShiftResult step = exponent_shift_operator(out.final_polynomial, plans[i]);
        out.cumulative_bound += step.bound;
        out.ratio_sum += plans[i].ratio();
        out.final_polynomial = step.shifted;
        out.steps.push_back(std::move(step));
    }
    const MuntzPolynomial& q = out.final_polynomial;
    out.actual = sup_norm([&](double t) { return p(t) - q(t); }).norm;
    if (!plans.empty()) {
        if (std::isnan(delta)) {
            delta = 0.0;
            for (std::size_t j = 0; j < plans.front().source().size(); ++j) {
                delta = std::max(delta, plans.back().target()[j] - plans.front().source()[j]);
            }
        }
        double inv = 0.0;
        for (double l : plans.front().reference()) inv += 1.0 / l;
        out.delta = delta;
        out.cap = delta * inv;
        out.hypothesis_holds = delta < 1.0 / (8.0 * inv);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weak L_s
// ---------------------------------------------------------------------------

namespace {

struct Scan {
    double a;
    double h;
    std::vector<double> values;  // |f| at midpoints
};

Scan midpoint_scan(const RealFunction& f, double a, double b, std::size_t M) {
    Scan s{a, (b - a) / static_cast<double>(M), std::vector<double>(M)};
    for (std::size_t j = 0; j < M; ++j) {
        const double v = std::abs(f(a + (static_cast<double>(j) + 0.5) * s.h));
        s.values[j] = std::isnan(v) ? 0.0 : v;
    }
    return s;
}

/// sup over scan levels of y^s·μ, with μ = (count of values ≥ y − 1/2)·h: the level set of a
/// sampled value ends at that sample's midpoint, so its own cell counts half.
std::pair<double, double> coarse_sup(const Scan& scan, double s) {
    std::vector<double> v = scan.values;
    std::sort(v.begin(), v.end(), std::greater<>());
    double best = 0.0;
    double level = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] <= 0.0) continue;
        // Ties: count all values equal to v[i].
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
        const double val = std::pow(v[i], s) * (static_cast<double>(j) + 0.5) * scan.h;
        if (val > best) {
            best = val;
            level = v[i];
        }
        i = j;
    }
    return {best, level};
}

/// μ{|f| ≥ y} with the crossing location bisected inside each cell where the indicator flips.
double refined_measure(const RealFunction& f, const Scan& scan, double y) {
    const std::size_t M = scan.values.size();
    auto above = [&](double t) {
        const double v = std::abs(f(t));
        return !std::isnan(v) && v >= y;
    };
    double mu = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        if (scan.values[j] >= y) mu += scan.h;
    }
    // Midpoint counting assigns each cell wholly; correct the cells adjacent to flips.
    for (std::size_t j = 0; j + 1 < M; ++j) {
        const bool in0 = scan.values[j] >= y;
        const bool in1 = scan.values[j + 1] >= y;
        if (in0 == in1) continue;
        double lo = scan.a + (static_cast<double>(j) + 0.5) * scan.h;
        double hi = lo + scan.h;
        for (int it = 0; it < 50; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (above(mid) == in0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double cross = 0.5 * (lo + hi);
        const double boundary = scan.a + static_cast<double>(j + 1) * scan.h;  // cell edge used by counting
        // Counting put [.., boundary] with cell j's state; the true switch is at `cross`.
        mu += (in0 ? 1.0 : -1.0) * (cross - boundary);
    }
    return std::max(mu, 0.0);
}

}  // namespace

WeakNorm weak_norm(const RealFunction& f, double a, double b, double s, const WeakNormOptions& options) {
    if (!(s > 0.0)) throw DomainError("weak norm needs s > 0");
    if (!(a < b)) throw DomainError("weak norm needs a < b");
    const std::size_t M = std::max<std::size_t>(options.scan, 16);
    const Scan scan = midpoint_scan(f, a, b, M);
    auto [best, level] = coarse_sup(scan, s);
    WeakNorm out;
    if (best <= 0.0) {
        out.stabilized = true;
        return out;
    }
    // Refine the level by golden section on y^s·μ(y) around the coarse maximizer.
    auto objective = [&](double y) { return std::pow(y, s) * refined_measure(f, scan, y); };
    double lo = 0.999 * level;
    double hi = 1.001 * level;
    double best_y = level;
    double best_val = objective(level);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int it = 0; it < 30; ++it) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = objective(x2);
        }
        if (f1 > best_val) {
            best_val = f1;
            best_y = x1;
        }
        if (f2 > best_val) {
            best_val = f2;
            best_y = x2;
        }
    }
    out.value = std::pow(best_val, 1.0 / s);
    out.level = best_y;
    out.measure = best_val / std::pow(best_y, s);

    const Scan half = midpoint_scan(f, a, b, M / 2);
    const double coarse = std::pow(coarse_sup(half, s).first, 1.0 / s);
    out.stabilized = std::abs(coarse - out.value) <= options.stability_tol * out.value;
    return out;
}

// ---------------------------------------------------------------------------
// Derivative diagnostics
// ---------------------------------------------------------------------------

DerivativeReport derivative_weak_l1_check(const MuntzPolynomial& p) {
    if (p.empty() || p.sum_of_abs_coefficients() == 0.0) throw DegenerateInputError("polynomial is constant");
    DerivativeReport rep;
    const WeakNorm wn = weak_norm([&p](double t) { return p.derivative(t); }, 0.0, 1.0, 1.0);
    rep.weak_norm_value = wn.value;
    rep.weak_norm_stabilized = wn.stabilized;
    if (!p.has_integer_exponents()) {
        rep.note = "non-integer exponents: disc bound not checked";
        return rep;
    }
    rep.disc_checked = true;
    auto on_circle = [&p](double theta) {
        return std::abs(p.evaluate_complex(std::complex<double>(0.5, 0.0) + 0.5 * std::polar(1.0, theta)));
    };
    constexpr std::size_t kSamples = 4096;
    double G = 0.0;
    double arg = 0.0;
    for (std::size_t j = 0; j < kSamples; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / kSamples;
        const double v = on_circle(theta);
        if (v > G) {
            G = v;
            arg = theta;
        }
    }
    const double step = kTwoPi / kSamples;
    SupNormOptions options;
    options.scan_points = 64;
    options.refine = 1e-12;
    G = std::max(G, sup_norm(on_circle, arg - step, arg + step, options).norm);
    rep.cauchy_G = G;

    rep.pointwise_bound_ok = true;
    for (std::size_t j = 0; j < 2000; ++j) {
        const double x = 0.75 + 0.25 * (static_cast<double>(j) + 0.5) / 2000.0;
        const double ratio = std::abs(p.derivative(x)) * kTwoPi * (1.0 - x) / G;
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_x = x;
        }
        if (ratio > 1.0) rep.pointwise_bound_ok = false;
    }
    rep.note = rep.pointwise_bound_ok ? "pointwise bound holds on (3/4,1)"
                                      : "pointwise Cauchy bound fails on (3/4,1) for this finite polynomial";
    return rep;
}

Periodized periodize(const MuntzPolynomial& p) {
    // p(0) = 0 for positive exponents, so the slope is −p(1).
    return Periodized{p, p(0.0) - p(1.0)};
}

}  // namespace muntz
