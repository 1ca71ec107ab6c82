#pragma once

#include <functional>
#include <span>

#include "thermoq/errors.hpp"

namespace thermoq {

struct QuadratureSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 50;
    // Half-width of the truncated window for whole-line integrals, in units
    // of the integrand's length scale.
    double infinite_cutoff = 12.0;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

// Adaptive Simpson quadrature on [a, b] with the (S2 - S1)/15 acceptance
// test. Deterministic. Throws QuadratureError (carrying the best estimate
// and an error bound) when any panel is still unconverged at max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSettings& settings = {});

// Whole-line integral, truncated at +-infinite_cutoff * length_scale.
double integrate_real_line(const std::function<double(double)>& f, double length_scale,
                           const QuadratureSettings& settings = {});

// Brent root search (inverse quadratic / secant with a bisection fallback).
// Requires f to change sign across the bracket; returns x with the final
// bracket width at most tol (plus machine precision scaling).
double find_root(const std::function<double(double)>& f, const Bracket& bracket,
                 double tol = 1e-12);

// Physicists' Hermite polynomial H_n(y) by the upward recurrence
// H_{k+1} = 2 y H_k - 2 k H_{k-1}. Supported for 0 <= n <= 50.
double hermite(int n, double y);

// log(sum_i exp(v_i)) evaluated with the max-shift trick so that widely
// separated magnitudes do not underflow. DomainError on empty input.
double log_sum_exp(std::span<const double> v);

} // namespace thermoq
