#pragma once

#include <Eigen/Core>

#include "distwave/errors.hpp"

namespace distwave {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;

/// Uniform grid [0, x_max] with step dx; the point count is rounded so the
/// interval count is even (composite Simpson needs paired panels).
Vec uniform_grid(double x_max, double dx);

/// n points from lo to hi inclusive, equally spaced in log.
Vec log_grid(double lo, double hi, int n);

/// Composite Simpson weights for a uniform grid with an even interval count.
Vec simpson_weights(const Vec& x);

/// Trapezoid-in-log weights: integrates f against dxi on a log-spaced grid.
Vec log_trapezoid_weights(const Vec& xi);

/// Composite-Simpson-in-log weights (even interval count required); fourth
/// order where the plain trapezoid limits reconstruction accuracy.
Vec log_simpson_weights(const Vec& xi);

/// First derivative on an arbitrary increasing grid, 3-point stencils
/// (one-sided at the ends).
Vec derivative_nonuniform(const Vec& x, const Vec& f);

/// First derivative on a uniform grid; interior centered, ends one-sided
/// second order. When even_at_zero is set the left end uses the even
/// reflection (derivative pinned to 0 at x = 0).
Vec derivative_uniform(const Vec& x, const Vec& f, bool even_at_zero = false);

/// Second derivative on a uniform grid; even reflection across x = 0 when
/// even_at_zero is set, one-sided stencils otherwise.
Vec second_derivative_uniform(const Vec& x, const Vec& f, bool even_at_zero = false);

inline double japanese_bracket(double x) { return std::sqrt(1.0 + x * x); }

} // namespace distwave
