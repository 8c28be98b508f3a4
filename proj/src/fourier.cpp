#include "muntz/fourier.hpp"

#include "muntz/error.hpp"
#include "muntz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace muntz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kReanchor = 64;

}  // namespace

// ---------------------------------------------------------------------------
// TrigPolynomial
// ---------------------------------------------------------------------------

TrigPolynomial::TrigPolynomial(double a0, std::vector<Harmonic> harmonics)
    : a0_(a0), harmonics_(std::move(harmonics)) {
    if (!std::isfinite(a0_)) throw DomainError("non-finite a0");
    for (const auto& h : harmonics_) {
        if (!std::isfinite(h.a) || !std::isfinite(h.b)) throw DomainError("non-finite harmonic");
    }
}

TrigPolynomial TrigPolynomial::cosine(std::size_t k, double amplitude) {
    if (k == 0) return constant(amplitude);
    std::vector<Harmonic> h(k);
    h[k - 1].a = amplitude;
    return TrigPolynomial(0.0, std::move(h));
}

TrigPolynomial TrigPolynomial::sine(std::size_t k, double amplitude) {
    if (k == 0) return TrigPolynomial();
    std::vector<Harmonic> h(k);
    h[k - 1].b = amplitude;
    return TrigPolynomial(0.0, std::move(h));
}

TrigPolynomial TrigPolynomial::from_coefficient_vector(const std::vector<double>& v) {
    if (v.empty() || v.size() % 2 == 0) throw ShapeError("coefficient vector must have odd length");
    std::vector<Harmonic> h((v.size() - 1) / 2);
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = {v[1 + 2 * k], v[2 + 2 * k]};
    return TrigPolynomial(v[0], std::move(h));
}

Harmonic TrigPolynomial::harmonic(std::size_t k) const {
    if (k == 0 || k > harmonics_.size()) return {};
    return harmonics_[k - 1];
}

double TrigPolynomial::operator()(double x) const {
    const double theta = kTwoPi * (x - std::floor(x));
    const double c1 = std::cos(theta);
    const double s1 = std::sin(theta);
    double c = c1;
    double s = s1;
    double sum = 0.5 * a0_;
    for (std::size_t k = 1; k <= harmonics_.size(); ++k) {
        if (k > 1) {
            if (k % kReanchor == 0) {
                c = std::cos(static_cast<double>(k) * theta);
                s = std::sin(static_cast<double>(k) * theta);
            } else {
                const double cn = c * c1 - s * s1;
                s = s * c1 + c * s1;
                c = cn;
            }
        }
        sum += harmonics_[k - 1].a * c + harmonics_[k - 1].b * s;
    }
    return sum;
}

TrigPolynomial TrigPolynomial::normalized() const {
    std::size_t deg = harmonics_.size();
    while (deg > 0 && harmonics_[deg - 1].a == 0.0 && harmonics_[deg - 1].b == 0.0) --deg;
    return TrigPolynomial(a0_, std::vector<Harmonic>(harmonics_.begin(), harmonics_.begin() + deg));
}

std::vector<double> TrigPolynomial::coefficient_vector() const {
    std::vector<double> v{a0_};
    for (const auto& h : harmonics_) {
        v.push_back(h.a);
        v.push_back(h.b);
    }
    return v;
}

TrigPolynomial TrigPolynomial::scaled(double c) const {
    std::vector<Harmonic> h = harmonics_;
    for (auto& x : h) {
        x.a *= c;
        x.b *= c;
    }
    return TrigPolynomial(c * a0_, std::move(h));
}

TrigPolynomial TrigPolynomial::shifted(double shift) const {
    std::vector<Harmonic> h = harmonics_;
    for (std::size_t k = 1; k <= h.size(); ++k) {
        const double phase = kTwoPi * static_cast<double>(k) * (shift - std::floor(shift));
        const double ch = std::cos(phase);
        const double sh = std::sin(phase);
        const Harmonic old = h[k - 1];
        h[k - 1] = {old.a * ch + old.b * sh, -old.a * sh + old.b * ch};
    }
    return TrigPolynomial(a0_, std::move(h));
}

namespace {

TrigPolynomial combine(const TrigPolynomial& p, const TrigPolynomial& q, double sign) {
    std::vector<Harmonic> h(std::max(p.degree(), q.degree()));
    for (std::size_t k = 1; k <= h.size(); ++k) {
        const Harmonic x = p.harmonic(k);
        const Harmonic y = q.harmonic(k);
        h[k - 1] = {x.a + sign * y.a, x.b + sign * y.b};
    }
    return TrigPolynomial(p.a0() + sign * q.a0(), std::move(h));
}

}  // namespace

TrigPolynomial operator+(const TrigPolynomial& p, const TrigPolynomial& q) { return combine(p, q, 1.0); }
TrigPolynomial operator-(const TrigPolynomial& p, const TrigPolynomial& q) { return combine(p, q, -1.0); }

SupNorm trig_sup_norm(const TrigPolynomial& p, double refine) {
    SupNormOptions options;
    options.scan_points = std::max<std::size_t>(4096, 32 * p.degree()) + 1;
    options.scheme = GridScheme::Uniform;
    options.refine = refine;
    return sup_norm([&p](double x) { return p(x); }, 0.0, 1.0, options);
}

// ---------------------------------------------------------------------------
// SummationMatrix
// ---------------------------------------------------------------------------

SummationMatrix SummationMatrix::dirichlet() { return SummationMatrix(SummationKind::Dirichlet); }
SummationMatrix SummationMatrix::fejer() { return SummationMatrix(SummationKind::Fejer); }
SummationMatrix SummationMatrix::vallee_poussin() { return SummationMatrix(SummationKind::ValleePoussin); }

SummationMatrix SummationMatrix::explicit_rows(std::vector<std::vector<double>> rows) {
    SummationMatrix Q(SummationKind::Explicit);
    Q.rows_ = std::move(rows);
    return Q;
}

SummationMatrix SummationMatrix::from_name(const std::string& name) {
    if (name == "dirichlet") return dirichlet();
    if (name == "fejer") return fejer();
    if (name == "vallee-poussin") return vallee_poussin();
    throw DomainError("unknown summation method: " + name);
}

std::string SummationMatrix::name() const {
    switch (kind_) {
        case SummationKind::Dirichlet: return "dirichlet";
        case SummationKind::Fejer: return "fejer";
        case SummationKind::ValleePoussin: return "vallee-poussin";
        case SummationKind::Explicit: return "explicit";
    }
    return "explicit";
}

std::vector<double> SummationMatrix::row(std::size_t n) const {
    const double nn = static_cast<double>(n);
    std::vector<double> q(n + 1, 1.0);
    switch (kind_) {
        case SummationKind::Dirichlet:
            break;
        case SummationKind::Fejer:
            for (std::size_t k = 0; k <= n; ++k) q[k] = 1.0 - static_cast<double>(k) / (nn + 1.0);
            break;
        case SummationKind::ValleePoussin: {
            const std::size_t m = n / 2;
            for (std::size_t k = m + 1; k <= n; ++k) {
                q[k] = (nn + 1.0 - static_cast<double>(k)) / (nn + 1.0 - static_cast<double>(m));
            }
            break;
        }
        case SummationKind::Explicit:
            if (n >= rows_.size()) throw MatrixError("summation matrix has no row " + std::to_string(n));
            if (rows_[n].size() != n + 1) throw MatrixError("row " + std::to_string(n) + " must have n+1 entries");
            for (double v : rows_[n]) {
                if (!std::isfinite(v)) throw MatrixError("non-finite entry in row " + std::to_string(n));
            }
            return rows_[n];
    }
    return q;
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

FourierCoefficients exact_coefficients(const TrigPolynomial& p, std::size_t K) {
    FourierCoefficients c;
    c.a0 = p.a0();
    c.harmonics.resize(K);
    for (std::size_t k = 1; k <= K; ++k) c.harmonics[k - 1] = p.harmonic(k);
    c.provenance = Provenance::Exact;
    return c;
}

namespace {

FourierCoefficients gl_coefficients(const RealFunction& f, std::size_t K, std::size_t panels) {
    static const QuadratureRule base = gauss_legendre(10);
    std::vector<double> A(K + 1, 0.0);
    std::vector<double> B(K + 1, 0.0);
    const double h = 0.5 / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double c = (2.0 * static_cast<double>(p) + 1.0) * h;
        for (std::size_t j = 0; j < base.nodes.size(); ++j) {
            const double x = c + h * base.nodes[j];
            const double v = f(x);
            if (!std::isfinite(v)) throw EvaluationError("non-finite value in Fourier quadrature");
            const double wv = h * base.weights[j] * v;
            A[0] += wv;
            const double theta = kTwoPi * x;
            const double c1 = std::cos(theta);
            const double s1 = std::sin(theta);
            double ck = c1;
            double sk = s1;
            for (std::size_t k = 1; k <= K; ++k) {
                if (k > 1) {
                    if (k % kReanchor == 0) {
                        ck = std::cos(static_cast<double>(k) * theta);
                        sk = std::sin(static_cast<double>(k) * theta);
                    } else {
                        const double cn = ck * c1 - sk * s1;
                        sk = sk * c1 + ck * s1;
                        ck = cn;
                    }
                }
                A[k] += wv * ck;
                B[k] += wv * sk;
            }
        }
    }
    FourierCoefficients out;
    out.a0 = 2.0 * A[0];
    out.harmonics.resize(K);
    for (std::size_t k = 1; k <= K; ++k) out.harmonics[k - 1] = {2.0 * A[k], 2.0 * B[k]};
    out.provenance = Provenance::Quadrature;
    return out;
}

double max_change(const FourierCoefficients& x, const FourierCoefficients& y) {
    double d = std::abs(x.a0 - y.a0);
    for (std::size_t k = 0; k < x.harmonics.size(); ++k) {
        d = std::max({d, std::abs(x.harmonics[k].a - y.harmonics[k].a), std::abs(x.harmonics[k].b - y.harmonics[k].b)});
    }
    return d;
}

}  // namespace

FourierCoefficients fourier_coefficients(const RealFunction& f, std::size_t K, double tol) {
    if (K < 1) throw DegenerateInputError("Fourier truncation needs K >= 1");
    std::size_t panels = std::max<std::size_t>(8, K / 2);
    FourierCoefficients prev = gl_coefficients(f, K, panels);
    constexpr std::size_t kMaxPanels = 1u << 16;
    while (true) {
        panels *= 2;
        FourierCoefficients next = gl_coefficients(f, K, panels);
        const double change = max_change(prev, next);
        if (change <= tol) {
            next.tol = tol;
            return next;
        }
        if (panels >= kMaxPanels) {
            throw AccuracyError("Fourier coefficients did not converge; best change " + std::to_string(change), change);
        }
        prev = std::move(next);
    }
}

FourierCoefficients fourier_coefficients(const SampledFunction& f, std::size_t K) {
    if (K < 1) throw DegenerateInputError("Fourier truncation needs K >= 1");
    f.validate();
    std::vector<double> pts = f.grid.points();
    std::vector<double> vals = f.values;
    if (pts.size() >= 2 && pts.front() == 0.0 && pts.back() == 1.0) {
        pts.pop_back();
        vals.pop_back();
    }
    const std::size_t n = pts.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(pts[j] - static_cast<double>(j) / static_cast<double>(n)) > 1e-12) {
            throw DomainError("sampled Fourier coefficients need a uniform periodic grid");
        }
    }
    if (n <= 2 * K) throw DegenerateInputError("too few samples for the requested truncation");
    FourierCoefficients out;
    out.harmonics.resize(K);
    const double w = 2.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) out.a0 += w * vals[j];
    for (std::size_t k = 1; k <= K; ++k) {
        double a = 0.0;
        double b = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double theta = kTwoPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
            a += vals[j] * std::cos(theta);
            b += vals[j] * std::sin(theta);
        }
        out.harmonics[k - 1] = {w * a, w * b};
    }
    out.provenance = Provenance::Sampled;
    return out;
}

TrigPolynomial partial_sum(const FourierCoefficients& c, std::size_t n) {
    if (n > c.K()) throw TruncationError("partial sum index exceeds coefficient truncation");
    return TrigPolynomial(c.a0, std::vector<Harmonic>(c.harmonics.begin(), c.harmonics.begin() + n));
}

TrigPolynomial summation_apply(const FourierCoefficients& c, const SummationMatrix& Q, std::size_t n) {
    if (n > c.K()) throw TruncationError("summation index exceeds coefficient truncation");
    const auto q = Q.row(n);
    std::vector<Harmonic> h(n);
    for (std::size_t k = 1; k <= n; ++k) h[k - 1] = {q[k] * c.harmonics[k - 1].a, q[k] * c.harmonics[k - 1].b};
    return TrigPolynomial(q[0] * c.a0, std::move(h));
}

TrigPolynomial kernel(const SummationMatrix& Q, std::size_t n) {
    const auto q = Q.row(n);
    std::vector<Harmonic> h(n);
    for (std::size_t k = 1; k <= n; ++k) h[k - 1] = {q[k], 0.0};
    return TrigPolynomial(q[0], std::move(h));
}

double convolve_periodic(const RealFunction& h, const RealFunction& g, double x, double tol) {
    const double frac = x - std::floor(x);
    const double brk[] = {frac};
    IntegrateOptions options;
    options.tol = 0.5 * tol;
    return 2.0 * integrate([&](double t) { return h(x - t) * g(t); }, 0.0, 1.0, brk, options);
}

TrigPolynomial convolve(const TrigPolynomial& h, const TrigPolynomial& u) {
    const std::size_t deg = std::min(h.degree(), u.degree());
    std::vector<Harmonic> out(deg);
    for (std::size_t k = 1; k <= deg; ++k) {
        const Harmonic x = h.harmonic(k);
        const Harmonic y = u.harmonic(k);
        out[k - 1] = {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    }
    return TrigPolynomial(h.a0() * u.a0(), std::move(out));
}

double l1_norm(const TrigPolynomial& p, double tol) {
    IntegrateOptions options;
    options.tol = tol;
    const std::size_t scan = std::max<std::size_t>(4096, 64 * (p.degree() + 1));
    return integrate_abs([&p](double x) { return p(x); }, 0.0, 1.0, options, scan);
}

double lebesgue_constant(const SummationMatrix& Q, std::size_t n, double tol) {
    return 2.0 * l1_norm(kernel(Q, n), 0.5 * tol);
}

ConvergenceTable convergence_experiment(const RealFunction& f, const SummationMatrix& Q,
                                        const std::vector<std::size_t>& n_list, std::size_t K, double tol) {
    ConvergenceTable table;
    if (n_list.empty()) return table;
    const std::size_t nmax = *std::max_element(n_list.begin(), n_list.end());
    if (K == 0) K = std::max<std::size_t>(1, 4 * nmax);
    const FourierCoefficients c = fourier_coefficients(f, K, tol);
    for (std::size_t n : n_list) {
        const TrigPolynomial u = summation_apply(c, Q, n);
        SupNormOptions options;
        options.scan_points = std::max<std::size_t>(4096, 32 * n) + 1;
        options.scheme = GridScheme::Uniform;
        const double err = sup_norm([&](double x) { return u(x) - f(x); }, 0.0, 1.0, options).norm;
        table.rows.push_back({n, err});
    }
    table.strictly_decreasing = true;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        if (!(table.rows[i].error < table.rows[i - 1].error)) table.strictly_decreasing = false;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& r : table.rows) {
        if (r.error > 0.0 && r.n > 0) {
            const double lx = std::log(static_cast<double>(r.n));
            const double ly = std::log(r.error);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
        }
    }
    const double md = static_cast<double>(m);
    const double den = md * sxx - sx * sx;
    table.loglog_slope = m >= 2 && den > 0.0 ? (md * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
    return table;
}

}  // namespace muntz
