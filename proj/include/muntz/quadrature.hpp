#pragma once

#include "muntz/core.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace muntz {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
QuadratureRule gauss_legendre(std::size_t n);

struct IntegrateOptions {
    double tol = 1e-10;
    std::size_t max_panels = 65536;
};

/// Adaptive composite 10-point Gauss-Legendre with dyadic panel splitting.
/// Throws AccuracyError (carrying the best estimate) if tol is not reached.
double integrate(const RealFunction& f, double a, double b, const IntegrateOptions& options = {});
double integrate(const RealFunction& f, double a, double b, double tol);

/// Same, after splitting [a,b] at the given interior breakpoints.
double integrate(const RealFunction& f, double a, double b, std::span<const double> breaks,
                 const IntegrateOptions& options = {});

/// Sign changes of f on (a,b), located by a uniform scan plus bisection.
std::vector<double> sign_changes(const RealFunction& f, double a, double b, std::size_t scan = 4096);

/// ∫|f| with panels split at the sign changes of f.
double integrate_abs(const RealFunction& f, double a, double b, const IntegrateOptions& options = {},
                     std::size_t scan = 4096);

/// Fixed composite rule: `order`-point Gauss-Legendre on each [breaks[i], breaks[i+1]].
QuadratureRule composite_gauss_legendre(std::span<const double> breaks, std::size_t order);

/// Breakpoints on [a,b] geometrically graded toward both endpoints:
/// `levels` dyadic layers of width ratio 1/2 down to (b−a)·2^{−levels}, plus `uniform` interior panels.
std::vector<double> graded_breaks(double a, double b, std::size_t levels, std::size_t uniform);

}  // namespace muntz
