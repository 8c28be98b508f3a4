#include "muntz/quadrature.hpp"

#include "muntz/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace muntz {

QuadratureRule gauss_legendre(std::size_t n) {
    if (n == 0) throw DegenerateInputError("Gauss-Legendre rule needs n >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = nn * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : nn * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    if (n == 1) rule.weights[0] = 2.0;
    return rule;
}

namespace {

const QuadratureRule& gl10() {
    static const QuadratureRule rule = gauss_legendre(10);
    return rule;
}

double panel(const RealFunction& f, double a, double b) {
    const auto& r = gl10();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double v = f(c + h * r.nodes[i]);
        if (!std::isfinite(v)) throw EvaluationError("non-finite integrand value");
        s += r.weights[i] * v;
    }
    return h * s;
}

struct Panel {
    double a;
    double b;
    double whole;
};

}  // namespace

double integrate(const RealFunction& f, double a, double b, const IntegrateOptions& options) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw DomainError("integrate needs a <= b");
    }
    const double width = b - a;
    std::vector<Panel> stack{{a, b, panel(f, a, b)}};
    std::size_t panels = 1;
    double total = 0.0;
    double comp = 0.0;
    bool failed = false;
    auto accept = [&](double v) {
        const double t = total + v;
        comp += std::abs(total) >= std::abs(v) ? (total - t) + v : (v - t) + total;
        total = t;
    };
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double m = 0.5 * (p.a + p.b);
        const double left = panel(f, p.a, m);
        const double right = panel(f, m, p.b);
        const double refined = left + right;
        const double err = std::abs(refined - p.whole);
        const double local = options.tol * (p.b - p.a) / width;
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(refined);
        if (err <= std::max(local, floor) || (p.b - p.a) < 1e-15 * width) {
            accept(refined);
            continue;
        }
        if (panels >= options.max_panels) {
            failed = true;
            accept(refined);
            continue;
        }
        ++panels;
        stack.push_back({m, p.b, right});
        stack.push_back({p.a, m, left});
    }
    const double result = total + comp;
    if (failed) throw AccuracyError("integrate: tolerance not reached at max panel count", result);
    return result;
}

double integrate(const RealFunction& f, double a, double b, double tol) {
    IntegrateOptions options;
    options.tol = tol;
    return integrate(f, a, b, options);
}

double integrate(const RealFunction& f, double a, double b, std::span<const double> breaks,
                 const IntegrateOptions& options) {
    std::vector<double> pts{a};
    for (double x : breaks) {
        if (x > a && x < b) pts.push_back(x);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    double best = 0.0;
    bool failed = false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        IntegrateOptions local = options;
        local.tol = options.tol * (pts[i + 1] - pts[i]) / (b - a);
        try {
            const double v = integrate(f, pts[i], pts[i + 1], local);
            total += v;
            best += v;
        } catch (const AccuracyError& e) {
            failed = true;
            best += e.best_estimate();
        }
    }
    if (failed) throw AccuracyError("integrate: tolerance not reached on a sub-interval", best);
    return total;
}

std::vector<double> sign_changes(const RealFunction& f, double a, double b, std::size_t scan) {
    std::vector<double> roots;
    if (scan < 2) scan = 2;
    double x0 = a;
    double f0 = f(a);
    for (std::size_t j = 1; j <= scan; ++j) {
        const double x1 = a + (b - a) * static_cast<double>(j) / static_cast<double>(scan);
        const double f1 = f(x1);
        if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
            double lo = x0;
            double hi = x1;
            double flo = f0;
            for (int it = 0; it < 100 && hi - lo > 4e-16 * std::max(1.0, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0) && fm != 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        if (f1 != 0.0) {
            f0 = f1;
            x0 = x1;
        }
    }
    return roots;
}

double integrate_abs(const RealFunction& f, double a, double b, const IntegrateOptions& options,
                     std::size_t scan) {
    const auto roots = sign_changes(f, a, b, scan);
    return integrate([&](double x) { return std::abs(f(x)); }, a, b, roots, options);
}

QuadratureRule composite_gauss_legendre(std::span<const double> breaks, std::size_t order) {
    const QuadratureRule base = gauss_legendre(order);
    QuadratureRule out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double c = 0.5 * (breaks[i] + breaks[i + 1]);
        const double h = 0.5 * (breaks[i + 1] - breaks[i]);
        for (std::size_t j = 0; j < base.nodes.size(); ++j) {
            out.nodes.push_back(c + h * base.nodes[j]);
            out.weights.push_back(h * base.weights[j]);
        }
    }
    return out;
}

std::vector<double> graded_breaks(double a, double b, std::size_t levels, std::size_t uniform) {
    const double w = 0.25 * (b - a);
    std::vector<double> pts{a};
    for (std::size_t j = levels; j >= 1; --j) pts.push_back(a + w * std::ldexp(1.0, -static_cast<int>(j)));
    const std::size_t u = std::max<std::size_t>(uniform, 1);
    for (std::size_t j = 0; j <= u; ++j) {
        pts.push_back(a + w + 2.0 * w * static_cast<double>(j) / static_cast<double>(u));
    }
    for (std::size_t j = 1; j <= levels; ++j) pts.push_back(b - w * std::ldexp(1.0, -static_cast<int>(j)));
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace muntz
