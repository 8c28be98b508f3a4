#include "muntz/basis.hpp"

#include "muntz/approx.hpp"
#include "muntz/error.hpp"
#include "muntz/lp.hpp"
#include "muntz/muntz_ops.hpp"
#include "muntz/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace muntz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXd padded(const TrigPolynomial& p, std::size_t cols) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols));
    const auto c = p.coefficient_vector();
    for (std::size_t i = 0; i < c.size() && i < cols; ++i) v(static_cast<Eigen::Index>(i)) = c[i];
    return v;
}

TrigPolynomial from_row(const Eigen::VectorXd& v) {
    std::vector<double> c(v.data(), v.data() + v.size());
    if (c.size() % 2 == 0) c.push_back(0.0);
    return TrigPolynomial::from_coefficient_vector(c).normalized();
}

std::size_t max_degree(const std::vector<TrigPolynomial>& ps) {
    std::size_t d = 0;
    for (const auto& p : ps) d = std::max(d, p.degree());
    return d;
}

/// Values of each polynomial at x_j = j/N, one column per polynomial.
Eigen::MatrixXd evaluate_on_grid(const std::vector<TrigPolynomial>& ps, std::size_t N) {
    Eigen::MatrixXd E(N, ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < N; ++j) E(j, i) = ps[i](static_cast<double>(j) / static_cast<double>(N));
    }
    return E;
}

TrigPolynomial combine(const std::vector<TrigPolynomial>& ps, const Eigen::VectorXd& w) {
    TrigPolynomial out;
    for (std::size_t i = 0; i < ps.size(); ++i) out = out + ps[i].scaled(w(static_cast<Eigen::Index>(i)));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Difference system
// ---------------------------------------------------------------------------

std::vector<MuntzPolynomial> difference_system(const ExponentSequence& seq, std::size_t N) {
    if (N > seq.size()) throw TruncationError("difference system longer than the exponent sequence");
    std::vector<MuntzPolynomial> u;
    for (std::size_t n = 0; n < N; ++n) {
        if (n == 0) {
            u.push_back(MuntzPolynomial::monomial(seq[0]));
        } else {
            u.push_back(MuntzPolynomial({{seq[n - 1], -1.0}, {seq[n], 1.0}}));
        }
    }
    return u;
}

std::vector<double> difference_coefficients(const std::vector<double>& c) {
    std::vector<double> p(c.size());
    double tail = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        tail += c[i];
        p[i] = tail;
    }
    return p;
}

MuntzPolynomial expand_difference_combination(const std::vector<MuntzPolynomial>& u, const std::vector<double>& p) {
    if (p.size() > u.size()) throw ShapeError("more coefficients than difference functions");
    MuntzPolynomial out;
    for (std::size_t k = 0; k < p.size(); ++k) out = out + u[k].scaled(p[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Candidates
// ---------------------------------------------------------------------------

CandidateSet build_candidates(const std::vector<RealFunction>& fs, const SummationMatrix& Q,
                              const std::vector<std::size_t>& degrees, double rank_tol) {
    CandidateSet out;
    if (degrees.empty()) return out;
    const std::size_t K = std::max<std::size_t>(1, *std::max_element(degrees.begin(), degrees.end()));
    const std::size_t cols = 2 * K + 1;
    std::vector<Eigen::VectorXd> basis;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const FourierCoefficients c = fourier_coefficients(fs[i], K);
        for (std::size_t m : degrees) {
            const TrigPolynomial s = summation_apply(c, Q, m).normalized();
            const std::string tag = "(f" + std::to_string(i) + ", m=" + std::to_string(m) + ")";
            Eigen::VectorXd v = padded(s, cols);
            const double norm = v.norm();
            if (norm == 0.0) {
                out.dropped.push_back(tag + " zero candidate");
                continue;
            }
            Eigen::VectorXd r = v / norm;
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : basis) r -= q.dot(r) * q;
            }
            const double res = r.norm();
            if (res < rank_tol) {
                out.dropped.push_back(tag + " dependent on earlier candidates");
                continue;
            }
            basis.push_back(r / res);
            out.candidates.push_back(s);
            out.sources.emplace_back(i, m);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Step systems
// ---------------------------------------------------------------------------

StepSystem StepSystem::from_rows(std::vector<TrigPolynomial> rows) {
    StepSystem S;
    for (auto& r : rows) {
        const TrigPolynomial n = r.normalized();
        const auto c = n.coefficient_vector();
        std::size_t col = 0;
        while (col < c.size() && c[col] == 0.0) ++col;
        S.lead_column.push_back(col);
        S.lead.push_back((col + 1) / 2);
        S.high.push_back(n.degree());
        S.rows.push_back(n);
    }
    return S;
}

ExclusionResult gaussian_exclusion(const std::vector<TrigPolynomial>& candidates, double pivot_tol) {
    ExclusionResult out;
    const std::size_t r = candidates.size();
    if (r == 0) return out;
    const std::size_t cols = 2 * max_degree(candidates) + 1;
    Eigen::MatrixXd M(r, cols);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        const double s = trig_sup_norm(candidates[i]).norm;
        if (!(s > 0.0)) throw DegenerateInputError("zero candidate " + std::to_string(i));
        M.row(i) = padded(candidates[i], cols).transpose() / s;
        C(i, i) = 1.0 / s;
    }
    std::vector<char> active(r, 1);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    for (std::size_t j = 0; j < cols; ++j) {
        std::size_t best = r;
        double bv = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
            if (active[i] && std::abs(M(i, j)) > bv) {
                bv = std::abs(M(i, j));
                best = i;
            }
        }
        if (best == r || bv <= pivot_tol) {
            for (std::size_t i = 0; i < r; ++i) {
                if (active[i]) M(i, j) = 0.0;
            }
            continue;
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (!active[i] || i == best || M(i, j) == 0.0) continue;
            const double factor = M(i, j) / M(best, j);
            M.row(i) -= factor * M.row(best);
            C.row(i) -= factor * C.row(best);
            M(i, j) = 0.0;
        }
        active[best] = 0;
        pivots.emplace_back(best, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
        if (active[i]) out.rejected.push_back(i);
    }
    std::vector<TrigPolynomial> rows;
    Eigen::MatrixXd comb(pivots.size(), r);
    for (std::size_t l = 0; l < pivots.size(); ++l) {
        const std::size_t p = pivots[l].first;
        TrigPolynomial row = from_row(M.row(p).transpose());
        const double s = trig_sup_norm(row).norm;
        rows.push_back(row.scaled(1.0 / s));
        comb.row(l) = C.row(p) / s;
    }
    out.system = StepSystem::from_rows(std::move(rows));
    out.system.combination = std::move(comb);
    return out;
}

std::vector<std::string> step_system_violations(const StepSystem& S, double norm_tol) {
    std::vector<std::string> v;
    if (S.lead.size() != S.rows.size() || S.high.size() != S.rows.size() || S.lead_column.size() != S.rows.size()) {
        v.push_back("metadata length differs from row count");
        return v;
    }
    const StepSystem fresh = StepSystem::from_rows(S.rows);
    for (std::size_t l = 0; l < S.rows.size(); ++l) {
        const std::string tag = "row " + std::to_string(l) + ": ";
        const double norm = trig_sup_norm(S.rows[l]).norm;
        if (std::abs(norm - 1.0) > norm_tol) v.push_back(tag + "sup norm " + std::to_string(norm));
        if (fresh.lead_column[l] != S.lead_column[l] || fresh.lead[l] != S.lead[l] || fresh.high[l] != S.high[l]) {
            v.push_back(tag + "lead/high metadata inconsistent with coefficients");
        }
        if (l > 0 && !(fresh.lead_column[l] > fresh.lead_column[l - 1])) v.push_back(tag + "leading column not increasing");
        const auto& p = S.rows[l];
        if (fresh.lead[l] >= 1) {
            const Harmonic hm = p.harmonic(fresh.lead[l]);
            const Harmonic hn = p.harmonic(fresh.high[l]);
            if (!(hm.a * hm.a + hm.b * hm.b > 0.0)) v.push_back(tag + "zero leading harmonic");
            if (!(hn.a * hn.a + hn.b * hn.b > 0.0)) v.push_back(tag + "zero top harmonic");
        } else if (p.a0() == 0.0) {
            v.push_back(tag + "zero row");
        }
    }
    return v;
}

double span_residual(const std::vector<TrigPolynomial>& inputs, const StepSystem& S) {
    if (inputs.empty()) return 0.0;
    const std::size_t cols = 2 * std::max(max_degree(inputs), max_degree(S.rows)) + 1;
    Eigen::MatrixXd R(cols, S.rows.size());
    for (std::size_t l = 0; l < S.rows.size(); ++l) R.col(l) = padded(S.rows[l], cols);
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(R);
    double worst = 0.0;
    for (const auto& p : inputs) {
        const Eigen::VectorXd c = padded(p, cols);
        const Eigen::VectorXd t = S.rows.empty() ? Eigen::VectorXd() : Eigen::VectorXd(qr.solve(c));
        const Eigen::VectorXd res = S.rows.empty() ? c : Eigen::VectorXd(R * t - c);
        worst = std::max(worst, res.lpNorm<Eigen::Infinity>());
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Inclination
// ---------------------------------------------------------------------------

namespace {

struct NMResult {
    Eigen::VectorXd x;
    double value;
};

template <class F>
NMResult nelder_mead(const F& f, Eigen::VectorXd x0, double step, std::size_t max_evals) {
    const Eigen::Index n = x0.size();
    std::vector<Eigen::VectorXd> pts{x0};
    std::vector<double> vals{f(x0)};
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd p = x0;
        p(i) += step;
        pts.push_back(p);
        vals.push_back(f(p));
    }
    std::size_t evals = pts.size();
    while (evals < max_evals) {
        std::vector<std::size_t> idx(pts.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = idx.front();
        const std::size_t worst = idx.back();
        const std::size_t second = idx[idx.size() - 2];
        if (vals[worst] - vals[best] < 1e-12) break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i : idx) {
            if (i != worst) centroid += pts[i];
        }
        centroid /= static_cast<double>(n);
        const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
        const double fr = f(xr);
        ++evals;
        if (fr < vals[best]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            const Eigen::VectorXd xc = centroid + 0.5 * (pts[worst] - centroid);
            const double fc = f(xc);
            ++evals;
            if (fc < vals[worst]) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    vals[i] = f(pts[i]);
                    ++evals;
                }
            }
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    return {pts[static_cast<std::size_t>(it - vals.begin())], *it};
}

}  // namespace

InclinationResult inclination(const std::vector<TrigPolynomial>& A, const std::vector<TrigPolynomial>& B,
                              std::size_t grid, std::uint64_t seed, std::size_t starts) {
    if (A.empty()) throw RankError("inclination needs a nonempty A");
    const std::size_t deg = std::max(max_degree(A), max_degree(B));
    const std::size_t cols = 2 * deg + 1;
    {
        Eigen::MatrixXd CA(cols, A.size());
        for (std::size_t i = 0; i < A.size(); ++i) CA.col(i) = padded(A[i], cols);
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(CA);
        const auto& sv = svd.singularValues();
        if (sv.size() < static_cast<Eigen::Index>(A.size()) || !(sv(sv.size() - 1) > 1e-10 * sv(0))) {
            throw RankError("span A is degenerate");
        }
    }
    InclinationResult out;
    if (B.empty()) {
        out.direction.assign(A.size(), 0.0);
        out.direction[0] = 1.0;
        return out;
    }
    const std::size_t N = grid == 0 ? std::max<std::size_t>(1024, 64 * deg) : grid;
    const Eigen::MatrixXd EA = evaluate_on_grid(A, N);
    const Eigen::MatrixXd EB = evaluate_on_grid(B, N);

    auto grid_ratio = [&](const Eigen::VectorXd& alpha) {
        const Eigen::VectorXd f = EA * alpha;
        const double nf = f.lpNorm<Eigen::Infinity>();
        if (!(nf > 1e-300)) return 2.0;
        return lp::discrete_minimax(EB, f / nf).deviation;
    };

    Rng rng(seed);
    std::vector<std::pair<double, Eigen::VectorXd>> tried;
    const Eigen::Index dim = static_cast<Eigen::Index>(A.size());
    for (std::size_t s = 0; s < starts + A.size(); ++s) {
        Eigen::VectorXd a(dim);
        if (s < starts) {
            for (Eigen::Index i = 0; i < dim; ++i) a(i) = rng.normal();
        } else {
            a.setZero();
            a(static_cast<Eigen::Index>(s - starts)) = 1.0;
        }
        a /= a.norm();
        tried.emplace_back(grid_ratio(a), a);
    }
    std::stable_sort(tried.begin(), tried.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Eigen::VectorXd best = tried.front().second;
    double best_val = tried.front().first;
    if (dim > 1) {
        const std::size_t refine = std::min<std::size_t>(8, tried.size());
        for (std::size_t i = 0; i < refine; ++i) {
            const NMResult r = nelder_mead(grid_ratio, tried[i].second, 0.2, 60 * static_cast<std::size_t>(dim) + 40);
            if (r.value < best_val) {
                best_val = r.value;
                best = r.x;
            }
        }
    }
    best /= best.norm();

    const TrigPolynomial f = combine(A, best);
    const double fn = trig_sup_norm(f).norm;
    const Eigen::VectorXd fv = EA * best;
    const lp::MinimaxResult mm = lp::discrete_minimax(EB, fv);
    const TrigPolynomial residual = f - combine(B, mm.coefficients);
    out.value = std::min(1.0, trig_sup_norm(residual).norm / fn);
    out.lower_bound = std::min(out.value, std::max(0.0, mm.lower_bound) / fn);
    out.direction.assign(best.data(), best.data() + best.size());
    return out;
}

// ---------------------------------------------------------------------------
// Basis section diagnostics
// ---------------------------------------------------------------------------

BasisReport validate_basis_section(const StepSystem& S, std::size_t L, std::size_t probes, std::uint64_t seed,
                                   std::size_t grid) {
    if (L == 0 || L > S.size()) throw PreconditionError("L must lie in 1..rows(S)");
    BasisReport rep;
    rep.L = L;
    const std::vector<TrigPolynomial> rows(S.rows.begin(), S.rows.begin() + static_cast<std::ptrdiff_t>(L));
    const StepSystem fresh = StepSystem::from_rows(rows);
    rep.lead_columns = fresh.lead_column;
    rep.lead_frequencies = fresh.lead;
    rep.lead_columns_strict = true;
    rep.lead_frequencies_strict = true;
    for (std::size_t l = 1; l < L; ++l) {
        if (!(fresh.lead_column[l] > fresh.lead_column[l - 1])) rep.lead_columns_strict = false;
        if (!(fresh.lead[l] > fresh.lead[l - 1])) rep.lead_frequencies_strict = false;
    }

    // Probes: seeded unit-norm combinations of the first L rows.
    std::vector<Eigen::VectorXd> coeffs;
    std::vector<TrigPolynomial> xs;
    for (std::size_t i = 0; i < probes; ++i) {
        Rng rng = Rng::substream(seed, i);
        Eigen::VectorXd c(static_cast<Eigen::Index>(L));
        for (std::size_t l = 0; l < L; ++l) c(static_cast<Eigen::Index>(l)) = rng.normal();
        TrigPolynomial x = combine(rows, c);
        const double n = trig_sup_norm(x).norm;
        if (!(n > 0.0)) continue;
        coeffs.push_back(c / n);
        xs.push_back(x.scaled(1.0 / n));
    }

    const std::size_t top = *std::max_element(fresh.high.begin(), fresh.high.end());
    rep.s_nonincreasing = true;
    for (std::size_t n = fresh.lead[0]; n <= top; ++n) {
        double s = 0.0;
        for (const auto& x : xs) {
            const TrigPolynomial xc = x;
            s = std::max(s, best_trig_approx([&xc](double t) { return xc(t); }, n + 1).En);
        }
        if (!rep.s_curve.empty() && s > rep.s_curve.back().second + 1e-6) rep.s_nonincreasing = false;
        rep.s_curve.emplace_back(n, s);
    }

    const std::size_t G = grid == 0 ? std::max<std::size_t>(1024, 64 * top) : grid;
    rep.inclination_floor = 1.0;
    rep.inclination_floor_refined = 1.0;
    for (std::size_t j = 1; j < L; ++j) {
        const std::vector<TrigPolynomial> A(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(j));
        const std::vector<TrigPolynomial> B(rows.begin() + static_cast<std::ptrdiff_t>(j), rows.end());
        const std::uint64_t sj = substream_seed(seed, 1000 + j);
        const InclinationResult r = inclination(A, B, G, sj);
        const InclinationResult r2 = inclination(A, B, 2 * G, sj);
        rep.inclinations.push_back(r.value);
        rep.inclination_lower.push_back(r.lower_bound);
        rep.inclination_floor = std::min(rep.inclination_floor, r.value);
        rep.inclination_floor_refined = std::min(rep.inclination_floor_refined, r2.value);
    }
    if (L == 1) {
        rep.inclination_floor = 1.0;
        rep.inclination_floor_refined = 1.0;
    }
    rep.floor_stable = std::abs(rep.inclination_floor - rep.inclination_floor_refined) <= 1e-2;
    rep.meets_half = rep.inclination_floor >= 0.5;

    rep.projection_bound_ok = true;
    for (std::size_t j = 1; j < L; ++j) {
        double worst = 0.0;
        for (const auto& c : coeffs) {
            Eigen::VectorXd head = c;
            head.tail(static_cast<Eigen::Index>(L - j)).setZero();
            worst = std::max(worst, trig_sup_norm(combine(rows, head)).norm);
        }
        rep.projection_norms.push_back(worst);
        const double theta = rep.inclinations[j - 1];
        if (theta > 0.0 && worst > 1.0 / theta + 1e-6) rep.projection_bound_ok = false;
    }
    return rep;
}

StepBuild build_step_system(const ExponentSequence& seq, std::size_t N, const SummationMatrix& Q,
                            const std::vector<std::size_t>& degrees, double pivot_tol) {
    const auto u = difference_system(seq, N);
    std::vector<RealFunction> fs;
    for (const auto& p : u) {
        const Periodized v = periodize(p);
        fs.push_back([v](double x) { return v(x); });
    }
    StepBuild out;
    out.candidates = build_candidates(fs, Q, degrees);
    out.exclusion = gaussian_exclusion(out.candidates.candidates, pivot_tol);
    return out;
}

}  // namespace muntz
