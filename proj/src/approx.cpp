#include "muntz/approx.hpp"

#include "muntz/error.hpp"
#include "muntz/lp.hpp"
#include "muntz/muntz_ops.hpp"
#include "muntz/rng.hpp"
#include "muntz/weil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace muntz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Peak {
    double x;
    double value;  // signed residual
};

/// Golden-section maximization of |g| on [lo, hi].
Peak refine_peak(const RealFunction& g, double lo, double hi, Peak best) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = g(x1);
    double f2 = g(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        if (std::abs(f1) >= std::abs(f2)) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = g(x2);
        }
        if (std::abs(f1) > std::abs(best.value)) best = {x1, f1};
        if (std::abs(f2) > std::abs(best.value)) best = {x2, f2};
    }
    return best;
}

/// Local maxima of |g| over one period that reach `fraction` of the scan maximum, each refined.
std::vector<Peak> residual_peaks(const RealFunction& g, std::size_t scan, double fraction) {
    std::vector<double> v(scan);
    for (std::size_t j = 0; j < scan; ++j) {
        v[j] = g(static_cast<double>(j) / static_cast<double>(scan));
        if (!std::isfinite(v[j])) throw EvaluationError("non-finite residual");
    }
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    std::vector<Peak> peaks;
    const double h = 1.0 / static_cast<double>(scan);
    for (std::size_t j = 0; j < scan; ++j) {
        const double prev = std::abs(v[(j + scan - 1) % scan]);
        const double next = std::abs(v[(j + 1) % scan]);
        const double cur = std::abs(v[j]);
        if (cur >= prev && cur >= next && cur >= fraction * vmax && cur > 0.0) {
            const double x = static_cast<double>(j) * h;
            Peak p = refine_peak(g, x - h, x + h, {x, v[j]});
            p.x -= std::floor(p.x);
            peaks.push_back(p);
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.x < b.x; });
    return peaks;
}

std::size_t alternation_count(const std::vector<Peak>& peaks, double level) {
    std::size_t count = 0;
    int last = 0;
    for (const auto& p : peaks) {
        if (std::abs(p.value) < level) continue;
        const int sign = p.value > 0.0 ? 1 : -1;
        if (sign != last) {
            ++count;
            last = sign;
        }
    }
    return count;
}

void fill_basis_row(double x, std::size_t n, Eigen::MatrixXd& Phi, std::size_t j) {
    auto row = Phi.row(static_cast<Eigen::Index>(j));
    row(0) = 1.0;
    const double theta = kTwoPi * x;
    for (std::size_t k = 1; k < n; ++k) {
        row(2 * k - 1) = std::cos(static_cast<double>(k) * theta);
        row(2 * k) = std::sin(static_cast<double>(k) * theta);
    }
}

TrigPolynomial witness_from(const Eigen::VectorXd& c, std::size_t n) {
    std::vector<Harmonic> h(n - 1);
    for (std::size_t k = 1; k < n; ++k) h[k - 1] = {c(2 * k - 1), c(2 * k)};
    return TrigPolynomial(2.0 * c(0), std::move(h));
}

}  // namespace

SampledFunction rho_n(const RealFunction& f, std::size_t n, std::size_t K, double tol) {
    if (n < 1) throw DomainError("rho_n needs n >= 1");
    const std::size_t KK = std::max<std::size_t>({K, n - 1, 1});
    const FourierCoefficients c = fourier_coefficients(f, KK, tol);
    const TrigPolynomial S = partial_sum(c, n - 1);
    const Grid grid = Grid::uniform_periodic(1024);
    SampledFunction out{grid, {}, true};
    out.values.reserve(grid.size());
    for (double x : grid.points()) out.values.push_back(f(x) - S(x));
    return out;
}

ApproxResult best_trig_approx(const RealFunction& f, std::size_t n, const ApproxOptions& options) {
    if (n < 1) throw DomainError("best approximation needs n >= 1");
    if (options.grid_m != 0 && options.grid_m < 8 * n) throw PreconditionError("grid_m must be at least 8n");
    std::size_t m = options.grid_m == 0 ? 32 * n : options.grid_m;
    m = ((m + 2 * n - 1) / (2 * n)) * (2 * n);
    const std::size_t d = 2 * n - 1;
    const std::size_t scan = options.scan_points == 0 ? std::max<std::size_t>(4096, 64 * n) : options.scan_points;

    std::vector<double> xs(m);
    for (std::size_t j = 0; j < m; ++j) xs[j] = static_cast<double>(j) / static_cast<double>(m);

    // Alternating weights at 2n equispaced nodes annihilate every trig polynomial of degree < n.
    std::vector<std::pair<std::size_t, int>> start;
    for (std::size_t j = 0; j < 2 * n; ++j) start.emplace_back(j * (m / (2 * n)), j % 2 == 0 ? 1 : -1);

    ApproxResult result;
    result.n = n;
    result.lower = 0.0;
    result.upper = std::numeric_limits<double>::infinity();

    for (std::size_t pass = 0; pass <= options.refinement_passes; ++pass) {
        Eigen::MatrixXd Phi(xs.size(), d);
        Eigen::VectorXd fv(xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) {
            fill_basis_row(xs[j], n, Phi, j);
            fv(j) = f(xs[j]);
            if (!std::isfinite(fv(j))) throw EvaluationError("non-finite function value on the minimax grid");
        }
        const lp::MinimaxResult mm = lp::discrete_minimax(Phi, fv, start);
        const TrigPolynomial witness = witness_from(mm.coefficients, n);
        const RealFunction residual = [&](double x) { return f(x) - witness(x); };
        const auto peaks = residual_peaks(residual, scan, 0.5);
        double upper = 0.0;
        for (const auto& p : peaks) upper = std::max(upper, std::abs(p.value));

        result.lower = std::max(result.lower, std::max(mm.lower_bound, 0.0));
        result.lp_iterations += mm.iterations;
        result.grid_size = xs.size();
        result.passes = pass;
        if (upper < result.upper) {
            result.upper = upper;
            result.witness = witness;
            result.equioscillation_points = alternation_count(peaks, 0.9 * upper);
        }
        if (pass == options.refinement_passes || upper - result.lower <= 1e-14) break;
        for (const auto& p : peaks) {
            const bool near = std::any_of(xs.begin(), xs.end(), [&](double x) { return std::abs(x - p.x) < 1e-12; });
            if (!near) xs.push_back(p.x);
        }
    }
    if (result.upper < result.lower) result.upper = result.lower;
    result.En = result.upper;
    result.certified_gap = result.upper - result.lower;
    result.equioscillation_ok = result.equioscillation_points >= 2 * n;
    return result;
}

RateTable rate_experiment(const std::vector<RealFunction>& family, double gamma, const std::vector<std::size_t>& n_list,
                          std::size_t grid_factor) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw PreconditionError("rate experiment needs 0 < gamma < 1");
    if (family.empty()) throw DegenerateInputError("empty test family");
    RateTable table;
    double running = 0.0;
    for (std::size_t n : n_list) {
        if (n < 2) throw PreconditionError("rate statistic needs n >= 2");
        RateRow row;
        row.n = n;
        for (const auto& f : family) {
            ApproxOptions options;
            options.grid_m = std::max<std::size_t>(grid_factor, 8) * n;
            const ApproxResult r = best_trig_approx(f, n, options);
            row.En = std::max(row.En, r.En);
            row.lower = std::max(row.lower, r.lower);
            row.upper = std::max(row.upper, r.upper);
        }
        const double nn = static_cast<double>(n);
        row.statistic = row.En * std::pow(nn, gamma) / std::log(nn);
        running = std::max(running, row.statistic);
        row.running_max = running;
        table.rows.push_back(row);
    }
    table.omega = running;

    const std::size_t len = table.rows.size();
    if (len >= 3) {
        const std::size_t q = std::max<std::size_t>(3, (len + 3) / 4);
        const std::size_t first = len - std::min(q, len);
        double sx = 0, sy = 0;
        const double cnt = static_cast<double>(len - first);
        for (std::size_t i = first; i < len; ++i) {
            sx += std::log(static_cast<double>(table.rows[i].n));
            sy += table.rows[i].statistic;
        }
        const double mx = sx / cnt;
        const double my = sy / cnt;
        double sxx = 0, sxy = 0;
        for (std::size_t i = first; i < len; ++i) {
            const double dx = std::log(static_cast<double>(table.rows[i].n)) - mx;
            sxx += dx * dx;
            sxy += dx * (table.rows[i].statistic - my);
        }
        table.tail_slope = sxy / sxx;
        double ssr = 0;
        for (std::size_t i = first; i < len; ++i) {
            const double dx = std::log(static_cast<double>(table.rows[i].n)) - mx;
            const double e = table.rows[i].statistic - my - table.tail_slope * dx;
            ssr += e * e;
        }
        table.tail_slope_se = std::sqrt(ssr / (cnt - 2.0) / sxx);
        table.tail_nonincreasing = table.tail_slope <= table.tail_slope_se;
    }
    return table;
}

std::vector<RealFunction> rate_family(const ExponentSequence& seq, const RateConfig& config) {
    const std::size_t terms = std::min(config.N, seq.size());
    if (terms == 0) throw DegenerateInputError("empty exponent sequence");
    std::vector<RealFunction> family;
    for (std::size_t s = 0; s < config.samples; ++s) {
        Rng rng = Rng::substream(config.seed, s);
        std::vector<MuntzTerm> t;
        for (std::size_t k = 1; k <= terms; ++k) {
            const double sign = rng.sign();
            t.push_back({seq[k - 1], sign * std::pow(config.rho, static_cast<double>(k)) / seq[k - 1]});
        }
        const MuntzPolynomial p(std::move(t));
        const Periodized v0 = periodize(p);
        const double norm = sup_norm([&](double x) { return v0(x); }).norm;
        if (!(norm > 0.0)) throw DegenerateInputError("test function vanishes");
        family.push_back(periodize(p.scaled(1.0 / norm)));
    }
    return family;
}

RateTable rate_experiment(const ExponentSequence& seq, double gamma, const std::vector<std::size_t>& n_list,
                          const RateConfig& config) {
    if (seq.size() < 2 || !check_gap_condition(seq).holds) throw PreconditionError("exponents fail the gap condition");
    if (!muntz_sum(seq).condition_holds()) throw PreconditionError("exponents fail the Müntz condition");
    return rate_experiment(rate_family(seq, config), gamma, n_list, config.grid_factor);
}

AsymptoticReport asymptotic_check(double alpha, const std::vector<double>& xs, std::size_t K, double tail_tol) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("asymptotic check needs 0 < alpha < 1");
    if (xs.empty()) throw DegenerateInputError("no evaluation points");
    for (double x : xs) {
        if (!(x > 0.0 && x < 0.25)) throw PreconditionError("evaluation points must lie in (0, 1/4)");
    }
    AsymptoticReport rep;
    rep.alpha = alpha;
    rep.K = K;
    rep.certified = true;
    const PsiWeight psi = PsiWeight::power(alpha, 0.0, K);
    const double g = std::tgamma(1.0 - alpha);
    const double cs = std::cos(0.5 * std::numbers::pi * alpha);
    const double sn = std::sin(0.5 * std::numbers::pi * alpha);
    for (double x : xs) {
        const SeriesValue S = psi_exponential_sum(psi, x, tail_tol, K, K);
        AsymptoticRow row;
        row.x = x;
        row.cos_sum = S.value.real();
        row.sin_sum = S.value.imag();
        const double lead = std::pow(kTwoPi * x, alpha - 1.0) * g;
        row.asymptote_sin = lead * cs;
        row.asymptote_cos = lead * sn;
        row.tail_bound = S.error_bound;
        if (!(S.error_bound <= tail_tol)) rep.certified = false;
        rep.rows.push_back(row);
    }
    // Least squares of the remainders on x^α.
    double sxx = 0, ss = 0, sc = 0;
    for (const auto& r : rep.rows) {
        const double xa = std::pow(r.x, alpha);
        sxx += xa * xa;
        ss += (r.sin_sum - r.asymptote_sin) * xa;
        sc += (r.cos_sum - r.asymptote_cos) * xa;
    }
    rep.mu = ss / sxx;
    rep.nu = sc / sxx;
    for (auto& r : rep.rows) {
        const double xa = std::pow(r.x, alpha);
        r.residual_sin = std::abs(r.sin_sum - r.asymptote_sin - rep.mu * xa) / std::abs(r.sin_sum);
        r.residual_cos = std::abs(r.cos_sum - r.asymptote_cos - rep.nu * xa) / std::abs(r.cos_sum);
        rep.max_residual_sin = std::max(rep.max_residual_sin, r.residual_sin);
        rep.max_residual_cos = std::max(rep.max_residual_cos, r.residual_cos);
    }
    // Diagnostic two-parameter fit c + ν'x^α of the cosine remainder.
    const double cnt = static_cast<double>(rep.rows.size());
    if (rep.rows.size() >= 2) {
        double s1 = 0, sy = 0, sxy = 0, sx2 = 0;
        for (const auto& r : rep.rows) {
            const double xa = std::pow(r.x, alpha);
            const double y = r.cos_sum - r.asymptote_cos;
            s1 += xa;
            sy += y;
            sxy += xa * y;
            sx2 += xa * xa;
        }
        const double den = cnt * sx2 - s1 * s1;
        rep.aux_nu = (cnt * sxy - s1 * sy) / den;
        rep.aux_constant = (sy - rep.aux_nu * s1) / cnt;
        for (const auto& r : rep.rows) {
            const double xa = std::pow(r.x, alpha);
            const double e = std::abs(r.cos_sum - r.asymptote_cos - rep.aux_constant - rep.aux_nu * xa) / std::abs(r.cos_sum);
            rep.aux_max_residual_cos = std::max(rep.aux_max_residual_cos, e);
        }
    }
    return rep;
}

}  // namespace muntz
