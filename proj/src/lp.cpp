#include "muntz/lp.hpp"

#include "muntz/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace muntz::lp {

std::string to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
        case Status::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class Simplex {
public:
    Simplex(const MatrixXd& A, const VectorXd& b, const Options& options)
        : A_(A), b_(b), m_(A.rows()), n_(A.cols()), opt_(options) {
        basis_.assign(m_, 0);
        is_basic_.assign(n_ + m_, 0);
    }

    bool set_basis(const std::vector<std::size_t>& basis) {
        if (basis.size() != m_) return false;
        std::fill(is_basic_.begin(), is_basic_.end(), 0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis[i] >= n_ + m_ || is_basic_[basis[i]]) return false;
            basis_[i] = basis[i];
            is_basic_[basis[i]] = 1;
        }
        if (!refactor()) return false;
        for (std::size_t i = 0; i < m_; ++i) {
            if (xB_(i) < -opt_.feasibility_tol) return false;
        }
        return true;
    }

    void artificial_basis() {
        std::vector<std::size_t> basis(m_);
        for (std::size_t i = 0; i < m_; ++i) basis[i] = n_ + i;
        std::fill(is_basic_.begin(), is_basic_.end(), 0);
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = basis[i];
            is_basic_[basis[i]] = 1;
        }
        Binv_ = MatrixXd::Identity(m_, m_);
        xB_ = b_;
    }

    /// Runs the simplex loop with costs over n_ + m_ columns; artificials may enter only in phase I.
    Status run(const VectorXd& cost, bool allow_artificial) {
        std::size_t since_refactor = 0;
        std::size_t degenerate = 0;
        while (true) {
            if (iterations_ >= opt_.max_iterations) return Status::IterationLimit;
            if (since_refactor >= opt_.refactor_every) {
                if (!refactor()) return Status::IterationLimit;
                since_refactor = 0;
            }
            VectorXd cB(m_);
            for (std::size_t i = 0; i < m_; ++i) cB(i) = cost(basis_[i]);
            const VectorXd y = Binv_.transpose() * cB;
            VectorXd d = cost.head(n_) - A_.transpose() * y;
            const bool bland = degenerate >= opt_.bland_after;

            std::size_t q = npos;
            double best = -opt_.optimality_tol;
            const std::size_t cols = allow_artificial ? n_ + m_ : n_;
            for (std::size_t j = 0; j < cols; ++j) {
                if (is_basic_[j]) continue;
                const double dj = j < n_ ? d(j) : cost(j) - y(j - n_);
                if (dj < best) {
                    q = j;
                    if (bland) break;
                    best = dj;
                }
            }
            if (q == npos) return Status::Optimal;

            const VectorXd u = column_in_basis(q);
            std::size_t r = npos;
            double theta = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (u(i) <= opt_.pivot_tol) continue;
                const double t = std::max(xB_(i), 0.0) / u(i);
                const bool tie = r != npos && std::abs(t - theta) <= 1e-12 * std::max(1.0, theta);
                if (r == npos || (t < theta && !tie)) {
                    r = i;
                    theta = t;
                } else if (tie) {
                    const bool prefer = bland ? basis_[i] < basis_[r] : u(i) > u(r);
                    if (prefer) {
                        r = i;
                        theta = std::min(theta, t);
                    }
                }
            }
            if (r == npos) return Status::Unbounded;
            pivot(r, q, u, theta);
            degenerate = theta <= 1e-14 ? degenerate + 1 : 0;
            ++iterations_;
            ++since_refactor;
            if (iterations_ % 200 == 0) {
                trace_.push_back("iter " + std::to_string(iterations_) + " objective " +
                                 std::to_string(cB.dot(xB_)) + (bland ? " (bland)" : ""));
            }
        }
    }

    /// Pivots zero-level artificials out of the basis where a structural column can replace them.
    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            const Eigen::RowVectorXd row = Binv_.row(r) * A_;
            std::size_t q = npos;
            double best = 1e-9;
            for (std::size_t j = 0; j < n_; ++j) {
                if (!is_basic_[j] && std::abs(row(j)) > best) {
                    best = std::abs(row(j));
                    q = j;
                }
            }
            if (q == npos) continue;
            const VectorXd u = column_in_basis(q);
            pivot(r, q, u, xB_(r) / u(r));
        }
    }

    bool refactor() {
        MatrixXd B(m_, m_);
        for (std::size_t i = 0; i < m_; ++i) B.col(i) = column(basis_[i]);
        Eigen::PartialPivLU<MatrixXd> lu(B);
        // Reject numerically singular bases by the spread of U's diagonal.
        const MatrixXd& LU = lu.matrixLU();
        double dmax = 0.0;
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m_; ++i) {
            dmax = std::max(dmax, std::abs(LU(i, i)));
            dmin = std::min(dmin, std::abs(LU(i, i)));
        }
        if (!(dmin > 1e-13 * dmax)) return false;
        Binv_ = lu.inverse();
        xB_ = Binv_ * b_;
        return true;
    }

    VectorXd primal() const {
        VectorXd x = VectorXd::Zero(n_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) x(basis_[i]) = std::max(xB_(i), 0.0);
        }
        return x;
    }

    VectorXd duals(const VectorXd& cost) const {
        VectorXd cB(m_);
        for (std::size_t i = 0; i < m_; ++i) cB(i) = cost(basis_[i]);
        return Binv_.transpose() * cB;
    }

    double artificial_sum() const {
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= n_) s += std::max(xB_(i), 0.0);
        }
        return s;
    }

    std::size_t iterations() const { return iterations_; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    std::vector<std::string>& trace() { return trace_; }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    VectorXd column(std::size_t j) const {
        if (j < n_) return A_.col(j);
        VectorXd e = VectorXd::Zero(m_);
        e(j - n_) = 1.0;
        return e;
    }

    VectorXd column_in_basis(std::size_t j) const {
        if (j < n_) return Binv_ * A_.col(j);
        return Binv_.col(j - n_);
    }

    void pivot(std::size_t r, std::size_t q, const VectorXd& u, double theta) {
        xB_ -= theta * u;
        xB_(r) = theta;
        const Eigen::RowVectorXd pr = Binv_.row(r) / u(r);
        VectorXd others = u;
        others(r) = 0.0;
        Binv_.noalias() -= others * pr;
        Binv_.row(r) = pr;
        is_basic_[basis_[r]] = 0;
        basis_[r] = q;
        is_basic_[q] = 1;
    }

    const MatrixXd& A_;
    const VectorXd& b_;
    std::size_t m_;
    std::size_t n_;
    Options opt_;
    std::vector<std::size_t> basis_;
    std::vector<char> is_basic_;
    MatrixXd Binv_;
    VectorXd xB_;
    std::size_t iterations_ = 0;
    std::vector<std::string> trace_;
};

}  // namespace

Solution solve(const StandardFormLP& lp, const Options& options, const std::vector<std::size_t>* initial_basis) {
    const std::size_t m = lp.A.rows();
    const std::size_t n = lp.A.cols();
    if (static_cast<std::size_t>(lp.b.size()) != m || static_cast<std::size_t>(lp.c.size()) != n) {
        throw ShapeError("LP dimensions do not match");
    }
    MatrixXd A = lp.A;
    VectorXd b = lp.b;
    std::vector<double> flip(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (b(i) < 0.0) {
            A.row(i) *= -1.0;
            b(i) = -b(i);
            flip[i] = -1.0;
        }
    }
    Simplex sx(A, b, options);
    Solution sol;

    bool warm = false;
    if (initial_basis != nullptr) warm = sx.set_basis(*initial_basis);
    if (!warm) {
        sx.artificial_basis();
        VectorXd phase1 = VectorXd::Zero(n + m);
        phase1.tail(m).setOnes();
        const Status s1 = sx.run(phase1, true);
        if (s1 != Status::Optimal) {
            sol.status = s1 == Status::Unbounded ? Status::IterationLimit : s1;
            sol.iterations = sx.iterations();
            sol.trace = sx.trace();
            sol.trace.push_back("phase I stopped: " + to_string(s1));
            return sol;
        }
        sx.refactor();
        if (sx.artificial_sum() > options.feasibility_tol * std::max(1.0, b.lpNorm<Eigen::Infinity>())) {
            sol.status = Status::Infeasible;
            sol.iterations = sx.iterations();
            sol.trace = sx.trace();
            return sol;
        }
        sx.drive_out_artificials();
    }

    VectorXd cost = VectorXd::Zero(n + m);
    cost.head(n) = lp.c;
    sol.status = sx.run(cost, false);
    sx.refactor();
    sol.x = sx.primal();
    sol.duals = sx.duals(cost);
    for (std::size_t i = 0; i < m; ++i) sol.duals(i) *= flip[i];
    sol.objective = lp.c.dot(sol.x);
    sol.iterations = sx.iterations();
    sol.basis = sx.basis();
    sol.trace = sx.trace();
    return sol;
}

MinimaxResult discrete_minimax(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& f,
                               const std::vector<std::pair<std::size_t, int>>& start, const Options& options) {
    const std::size_t N = Phi.rows();
    const std::size_t d = Phi.cols();
    if (static_cast<std::size_t>(f.size()) != N) throw ShapeError("minimax: f and Φ row counts differ");
    if (N <= d) throw DegenerateInputError("minimax needs more grid points than unknowns");

    StandardFormLP lp;
    lp.A.resize(d + 1, 2 * N);
    lp.A.topLeftCorner(d, N) = Phi.transpose();
    lp.A.topRightCorner(d, N) = -Phi.transpose();
    lp.A.row(d).setOnes();
    lp.b = VectorXd::Zero(d + 1);
    lp.b(d) = 1.0;
    lp.c.resize(2 * N);
    lp.c.head(N) = -f;
    lp.c.tail(N) = f;

    std::vector<std::size_t> basis;
    for (const auto& [row, sign] : start) basis.push_back(sign > 0 ? row : N + row);
    const Solution sol = solve(lp, options, basis.size() == d + 1 ? &basis : nullptr);
    if (sol.status != Status::Optimal) {
        auto trace = sol.trace;
        trace.push_back("status " + to_string(sol.status) + " after " + std::to_string(sol.iterations) + " iterations");
        throw OptimizationError("discrete minimax LP did not reach optimality", std::move(trace));
    }

    MinimaxResult out;
    out.coefficients = -sol.duals.head(d);
    out.weights = sol.x.head(N) - sol.x.tail(N);
    const double mass = out.weights.lpNorm<1>();
    if (mass > 0.0) out.weights /= mass;
    out.lower_bound = f.dot(out.weights);
    out.deviation = (f - Phi * out.coefficients).lpNorm<Eigen::Infinity>();
    out.iterations = sol.iterations;
    return out;
}

}  // namespace muntz::lp
