#include "muntz/weil.hpp"

#include "muntz/error.hpp"
#include "muntz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace muntz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

// ---------------------------------------------------------------------------
// PsiWeight
// ---------------------------------------------------------------------------

PsiWeight PsiWeight::power(double r, double beta, std::size_t K, double scale) {
    if (!std::isfinite(r) || !std::isfinite(beta) || !std::isfinite(scale) || scale == 0.0) {
        throw DomainError("power weight needs finite r, beta and nonzero scale");
    }
    PsiWeight w;
    w.rule_ = PsiRule::Power;
    w.r_ = r;
    w.scale_ = scale;
    w.beta_ = beta;
    w.K_ = K;
    return w;
}

PsiWeight PsiWeight::inverse_log(double beta, std::size_t K) {
    if (!std::isfinite(beta)) throw DomainError("non-finite beta");
    PsiWeight w;
    w.rule_ = PsiRule::InverseLog;
    w.beta_ = beta;
    w.K_ = K;
    return w;
}

PsiWeight PsiWeight::table(std::vector<double> values, double beta, TableTail tail, double tail_r) {
    if (values.empty()) throw DegenerateInputError("empty ψ table");
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("non-finite ψ table entry");
    }
    if (!std::isfinite(beta)) throw DomainError("non-finite beta");
    if (tail == TableTail::Power && !(tail_r > 0.0)) throw DomainError("power tail needs r > 0");
    PsiWeight w;
    w.rule_ = PsiRule::Table;
    w.beta_ = beta;
    w.K_ = values.size();
    w.values_ = std::move(values);
    w.tail_ = tail;
    w.r_ = tail == TableTail::Power ? tail_r : 0.0;
    return w;
}

bool PsiWeight::defined_at(std::size_t k) const noexcept {
    if (k == 0) return false;
    return rule_ != PsiRule::Table || k <= K_ || tail_ != TableTail::None;
}

bool PsiWeight::has_tail() const noexcept { return rule_ != PsiRule::Table || tail_ != TableTail::None; }

bool PsiWeight::finitely_supported() const noexcept { return rule_ == PsiRule::Table && tail_ == TableTail::Zero; }

double PsiWeight::operator()(std::size_t k) const {
    if (k == 0) throw DomainError("ψ is indexed from k = 1");
    const double kk = static_cast<double>(k);
    switch (rule_) {
        case PsiRule::Power:
            return scale_ * std::pow(kk, -r_);
        case PsiRule::InverseLog:
            return 1.0 / std::log(kk + 1.0);
        case PsiRule::Table:
            if (k <= K_) return values_[k - 1];
            switch (tail_) {
                case TableTail::Zero: return 0.0;
                case TableTail::Power: return values_.back() * std::pow(static_cast<double>(K_) / kk, r_);
                case TableTail::None: break;
            }
            throw TruncationError("ψ(" + std::to_string(k) + ") is beyond the table and no tail rule is set");
    }
    return 0.0;
}

PsiWeight PsiWeight::with_beta(double beta) const {
    PsiWeight w = *this;
    w.beta_ = beta;
    return w;
}

std::pair<double, double> phase_of(double beta) {
    if (beta == std::floor(beta) && std::abs(beta) < 1e15) {
        const long long m = ((static_cast<long long>(beta) % 4) + 4) % 4;
        switch (m) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double phi = 0.5 * beta * std::numbers::pi;
    return {std::cos(phi), std::sin(phi)};
}

// ---------------------------------------------------------------------------
// Class F1
// ---------------------------------------------------------------------------

PsiClassReport validate_psi_class(const PsiWeight& psi) {
    if (psi.K() < 3) throw DegenerateInputError("ψ-class validation needs K >= 3");
    PsiClassReport rep;
    const std::size_t K = psi.K();
    std::vector<double> v(K + 1);
    for (std::size_t k = 1; k <= K; ++k) v[k] = psi(k);

    rep.positive_ok = std::all_of(v.begin() + 1, v.end(), [](double x) { return x > 0.0; });

    rep.convexity_ok = true;
    for (std::size_t k = 2; k + 1 <= K; ++k) {
        const double d2 = v[k - 1] - 2.0 * v[k] + v[k + 1];
        const double slack = 4.0 * kEps * (std::abs(v[k - 1]) + 2.0 * std::abs(v[k]) + std::abs(v[k + 1]));
        if (d2 < -slack) {
            rep.convexity_ok = false;
            if (rep.reason.empty()) rep.reason = "second difference negative at k = " + std::to_string(k);
        }
    }

    std::vector<double> terms;
    for (std::size_t k = K; k >= 1; --k) terms.push_back(v[k] / static_cast<double>(k));
    rep.partial_sum = compensated_sum(terms);
    const double KK = static_cast<double>(K);

    switch (psi.rule()) {
        case PsiRule::Power:
            rep.vanishing_ok = psi.r() > 0.0;
            if (psi.r() > 0.0) {
                rep.tail_bound = std::abs(psi.scale()) * std::pow(KK, -psi.r()) / psi.r();
                rep.tail_method = "integral";
            } else {
                rep.tail_bound = kInf;
                rep.tail_method = "divergent";
            }
            break;
        case PsiRule::InverseLog:
            // Σ 1/(k ln(k+1)) ≥ ∫ dx/((x+1) ln(x+1)) = ∞
            rep.vanishing_ok = true;
            rep.tail_bound = kInf;
            rep.tail_method = "divergent";
            break;
        case PsiRule::Table:
            switch (psi.tail()) {
                case TableTail::Zero:
                    rep.vanishing_ok = true;
                    rep.tail_bound = 0.0;
                    rep.tail_method = "zero";
                    break;
                case TableTail::Power:
                    rep.vanishing_ok = true;
                    rep.tail_bound = std::abs(v[K]) / psi.r();
                    rep.tail_method = "integral";
                    break;
                case TableTail::None:
                    rep.vanishing_ok = false;
                    rep.tail_bound = kInf;
                    rep.tail_method = "undecidable-tail";
                    rep.reason = "explicit table without tail rule: undecidable-tail";
                    break;
            }
            break;
    }
    rep.sum_ok = std::isfinite(rep.tail_bound);
    if (!rep.sum_ok && rep.reason.empty()) rep.reason = "series sum psi(k)/k diverges";
    if (!rep.positive_ok && rep.reason.empty()) rep.reason = "psi(k) not positive on the truncation";
    if (!rep.vanishing_ok && rep.reason.empty()) rep.reason = "psi(k) does not tend to zero";
    rep.in_F1 = rep.positive_ok && rep.vanishing_ok && rep.convexity_ok && rep.sum_ok;
    return rep;
}

// ---------------------------------------------------------------------------
// Kernel series
// ---------------------------------------------------------------------------

namespace {

/// e^{2πi k x} with the product k·x split exactly so the phase is accurate for large k.
std::complex<double> unit_phase(double k, double x) {
    const double p = k * x;
    const double e = std::fma(k, x, -p);
    const double frac = (p - std::floor(p)) + e;
    const double theta = kTwoPi * frac;
    return {std::cos(theta), std::sin(theta)};
}

enum class TailKind { Power, InverseLog };

struct TailModel {
    TailKind kind = TailKind::Power;
    double scale = 1.0;  // ψ(k) = scale·k^{−r} for k beyond the start
    double r = 0.0;
    std::size_t start = 0;  // model valid for k > start
};

TailModel tail_model(const PsiWeight& psi) {
    switch (psi.rule()) {
        case PsiRule::Power: return {TailKind::Power, psi.scale(), psi.r(), 0};
        case PsiRule::InverseLog: return {TailKind::InverseLog, 1.0, 0.0, 0};
        case PsiRule::Table:
            break;
    }
    const double K = static_cast<double>(psi.K());
    return {TailKind::Power, psi.values().back() * std::pow(K, psi.r()), psi.r(), psi.K()};
}

double pochhammer(double r, int j) {
    double p = 1.0;
    for (int i = 0; i < j; ++i) p *= r + i;
    return p;
}

struct Accumulator {
    std::complex<double> sum = 0.0;
    double abs_sum = 0.0;
    std::size_t done = 0;

    void extend(const PsiWeight& psi, double x, std::size_t upto) {
        std::complex<double> step = unit_phase(1.0, x);
        std::complex<double> z;
        for (std::size_t k = done + 1; k <= upto; ++k) {
            if (k == done + 1 || k % 64 == 0) {
                z = unit_phase(static_cast<double>(k), x);
            } else {
                z *= step;
            }
            const double w = psi(k);
            sum += w * z;
            abs_sum += std::abs(w);
        }
        done = std::max(done, upto);
    }
};

}  // namespace

SeriesValue psi_exponential_sum(const PsiWeight& psi, double x, double tol, std::size_t min_terms,
                                std::size_t max_terms) {
    if (!std::isfinite(x)) throw DomainError("non-finite kernel argument");
    const double xr = x - std::floor(x);
    const double dist = std::min(xr, 1.0 - xr);
    SeriesValue out;
    Accumulator acc;

    if (psi.rule() == PsiRule::Table && psi.tail() != TableTail::Power) {
        acc.extend(psi, xr, psi.K());
        out.value = acc.sum;
        out.terms = psi.K();
        if (psi.tail() == TableTail::Zero) {
            out.error_bound = 4.0 * kEps * acc.abs_sum * static_cast<double>(psi.K());
            out.certified = true;
        } else {
            out.error_bound = kInf;
        }
        return out;
    }

    const TailModel model = tail_model(psi);
    if (model.kind == TailKind::Power && !(model.r > 0.0)) {
        throw DomainError("kernel series needs ψ(k) -> 0");
    }
    const bool abs_summable = model.kind == TailKind::Power && model.r > 1.0;
    max_terms = std::max(max_terms, psi.K());
    std::size_t kp = std::min(std::max({psi.K(), min_terms, std::size_t{1}}), max_terms);

    if (dist == 0.0 && !abs_summable) {
        out.singular = true;
        out.value = {kInf, 0.0};
        out.error_bound = kInf;
        return out;
    }

    while (true) {
        acc.extend(psi, xr, kp);
        const double N = static_cast<double>(kp + 1);
        const double rounding = 8.0 * kEps * acc.abs_sum;
        std::complex<double> estimate = acc.sum;
        double bound = kInf;

        if (dist == 0.0) {
            // Σ_{k≥N} s k^{−r} lies between the integrals from N and from N−1.
            const double lo = model.scale * std::pow(N, 1.0 - model.r) / (model.r - 1.0);
            const double hi = model.scale * std::pow(N - 1.0, 1.0 - model.r) / (model.r - 1.0);
            estimate += 0.5 * (lo + hi);
            bound = 0.5 * std::abs(hi - lo);
        } else {
            const double s = std::sin(std::numbers::pi * dist);
            const std::complex<double> z = unit_phase(1.0, xr);
            const std::complex<double> zN = unit_phase(N, xr);
            const std::complex<double> w = z / (z - 1.0);
            const int J = model.kind == TailKind::Power ? 3 : 1;
            // Forward differences Δ^jψ(N), Δψ(n) = ψ(n) − ψ(n+1).
            std::vector<double> f(J);
            for (int j = 0; j < J; ++j) f[j] = psi(kp + 1 + j);
            std::vector<double> d(J);
            for (int j = 0; j < J; ++j) {
                d[j] = f[0];
                for (int i = 0; i + 1 < J - j; ++i) f[i] = f[i] - f[i + 1];
            }
            std::complex<double> corr = 0.0;
            std::complex<double> wj = 1.0;
            for (int j = 0; j < J; ++j) {
                corr += d[j] * wj;
                wj *= w;
            }
            corr *= -zN / (z - 1.0);
            double DJ = 0.0;
            if (model.kind == TailKind::Power) {
                DJ = std::abs(model.scale) * pochhammer(model.r, J) * std::pow(N, -model.r - J);
            } else {
                DJ = 1.0 / ((N + 1.0) * std::pow(std::log(N + 1.0), 2));
            }
            const double abel = DJ / (s * std::pow(2.0 * s, J)) + 4.0 * kEps * std::abs(corr);
            double absolute = kInf;
            if (abs_summable) {
                absolute = std::abs(model.scale) * std::pow(N - 1.0, 1.0 - model.r) / (model.r - 1.0);
            }
            if (abel <= absolute) {
                estimate += corr;
                bound = abel;
            } else {
                bound = absolute;
            }
        }
        out.value = estimate;
        out.error_bound = bound + rounding;
        out.terms = kp;
        out.certified = out.error_bound <= tol;
        if (out.certified || kp >= max_terms) return out;
        kp = std::min(kp * 4, max_terms);
    }
}

KernelValue dpsi_kernel(const PsiWeight& psi, double x, double tol, std::size_t max_terms) {
    const auto [c, s] = phase_of(psi.beta());
    KernelValue out;
    const double xr = x - std::floor(x);
    if (xr == 0.0 && c == 0.0 && psi.has_tail() && !psi.finitely_supported()) {
        // Pure sine series vanishes at integers.
        out.value = 0.0;
        out.certified = true;
        return out;
    }
    const SeriesValue S = psi_exponential_sum(psi, x, tol, 1024, max_terms);
    out.singular = S.singular;
    out.terms = S.terms;
    out.error_bound = S.error_bound;
    out.certified = S.certified;
    out.value = S.singular ? kInf : c * S.value.real() - s * S.value.imag();
    return out;
}

// ---------------------------------------------------------------------------
// Multipliers
// ---------------------------------------------------------------------------

FourierCoefficients weil_derivative(const FourierCoefficients& c, const PsiWeight& psi) {
    const auto [cp, sp] = phase_of(psi.beta());
    FourierCoefficients out;
    out.a0 = 0.0;
    out.harmonics.resize(c.K());
    out.provenance = c.provenance;
    out.tol = c.tol;
    for (std::size_t k = 1; k <= c.K(); ++k) {
        const Harmonic h = c.harmonics[k - 1];
        if (h.a == 0.0 && h.b == 0.0) continue;
        const double w = psi(k);
        if (w == 0.0) throw DivisionError("psi(" + std::to_string(k) + ") = 0 at an active harmonic", static_cast<int>(k));
        out.harmonics[k - 1] = {(h.a * cp + h.b * sp) / w, (-h.a * sp + h.b * cp) / w};
    }
    return out;
}

FourierCoefficients weil_reconstruct(const FourierCoefficients& d, const PsiWeight& psi, double a0) {
    if (d.a0 != 0.0) throw PreconditionError("reconstruction needs a zero constant term");
    const auto [cp, sp] = phase_of(psi.beta());
    FourierCoefficients out;
    out.a0 = a0;
    out.harmonics.resize(d.K());
    out.provenance = d.provenance;
    out.tol = d.tol;
    for (std::size_t k = 1; k <= d.K(); ++k) {
        const Harmonic h = d.harmonics[k - 1];
        if (h.a == 0.0 && h.b == 0.0) continue;
        const double w = psi(k);
        out.harmonics[k - 1] = {w * (h.a * cp - h.b * sp), w * (h.a * sp + h.b * cp)};
    }
    return out;
}

double weil_nagy_norm(const FourierCoefficients& c, const PsiWeight& psi, double tol) {
    return trig_sup_norm(weil_derivative(c, psi).as_polynomial(), tol).norm;
}

PsiWeight psi_ratio(const PsiWeight& psi2, const PsiWeight& psi1, std::size_t K) {
    if (K == 0) throw DegenerateInputError("ratio table needs K >= 1");
    std::vector<double> values(K);
    for (std::size_t k = 1; k <= K; ++k) {
        const double den = psi1(k);
        if (den == 0.0) throw DivisionError("psi1(" + std::to_string(k) + ") = 0", static_cast<int>(k));
        values[k - 1] = psi2(k) / den;
    }
    return PsiWeight::table(std::move(values), psi2.beta() - psi1.beta(), TableTail::None);
}

CompositionCheck compose_property_check(const FourierCoefficients& c, const PsiWeight& psi1, const PsiWeight& psi2,
                                        double tol) {
    const std::size_t K = std::max<std::size_t>(c.K(), 1);
    const FourierCoefficients lhs = weil_derivative(weil_derivative(c, psi1), psi_ratio(psi2, psi1, K));
    const FourierCoefficients rhs = weil_derivative(c, psi2);
    CompositionCheck out;
    out.discrepancy = std::abs(lhs.a0 - rhs.a0);
    for (std::size_t k = 0; k < c.K(); ++k) {
        out.discrepancy = std::max({out.discrepancy, std::abs(lhs.harmonics[k].a - rhs.harmonics[k].a),
                                    std::abs(lhs.harmonics[k].b - rhs.harmonics[k].b)});
    }
    out.ok = out.discrepancy <= tol;
    return out;
}

RepresentationReport representation_check(const TrigPolynomial& f, const PsiWeight& psi,
                                          const std::vector<double>& xs, double kernel_tol,
                                          std::size_t kernel_terms) {
    const TrigPolynomial g = weil_derivative(exact_coefficients(f, f.degree()), psi).as_polynomial();
    const auto breaks = graded_breaks(0.0, 1.0, 24, 32);
    const QuadratureRule rule = composite_gauss_legendre(breaks, 20);
    RepresentationReport rep;
    rep.nodes = rule.nodes.size();
    std::vector<double> kern(rule.nodes.size());
    double err_integral = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const KernelValue kv = dpsi_kernel(psi, rule.nodes[j], kernel_tol, kernel_terms);
        if (kv.singular) throw EvaluationError("kernel singular at a quadrature node");
        if (!kv.certified) ++rep.uncertified_nodes;
        kern[j] = kv.value;
        err_integral += rule.weights[j] * kv.error_bound;
    }
    rep.kernel_error_integral = 2.0 * trig_sup_norm(g).norm * err_integral;
    // Correlation, not convolution: with g(x − t) the two βπ/2 rotations add instead of cancelling.
    for (double x : xs) {
        double conv = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) conv += rule.weights[j] * g(x + rule.nodes[j]) * kern[j];
        const double value = 0.5 * f.a0() + 2.0 * conv;
        rep.max_error = std::max(rep.max_error, std::abs(value - f(x)));
    }
    return rep;
}

}  // namespace muntz
