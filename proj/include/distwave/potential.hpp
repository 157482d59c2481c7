#pragma once

#include <functional>
#include <string>

#include "distwave/grid.hpp"

namespace distwave {

/// Asymptotic class of the potential, which drives the Jost seeding choice.
enum class TailKind {
    none,                  // identically zero beyond roundoff (free operator)
    inverse_square_quarter, // V ~ -1/(4x^2) [1 + O(x^-alpha)]
    exponential            // decays faster than any power
};

struct Potential {
    std::string name;
    std::function<double(double)> eval;   // V(x)
    std::function<double(double)> deriv;  // V'(x)
    std::function<double(double)> deriv2; // V''(x)
    double alpha = 0.0;                   // tail correction exponent
    bool even_extension = false;          // V(-x) = V(x) for the smooth extension
    TailKind tail = TailKind::none;
};

/// V = 0.
Potential make_zero_potential();

/// V(x) = -x^2 / (4 (1+x^2)^2): smooth, even, -1/(4x^2)[1 - 2x^-2 + ...] at
/// infinity (alpha = 2). The bundled demonstration potential.
Potential make_model_potential();

/// V(x) = -depth * sech^2(x). Exponentially decaying well used as a
/// bound-state oracle case.
Potential make_poschl_teller(double depth = 2.0);

/// Exactly -1/(4x^2) for x >= b, identically 0 for x <= a, joined by a C^inf
/// step on (a, b). Defaults a = 1/2, b = 1.
Potential make_smoothed_inverse_square(double a = 0.5, double b = 1.0);

/// Natural cubic spline through (x_i, V_i); derivatives by 5-point centered
/// stencils on the spline. Beyond the last sample the pure -1/(4x^2) tail is
/// used. alpha is caller-supplied metadata.
Potential make_table_potential(const Vec& x, const Vec& v, double alpha);

/// U(x) = -2 V(x) - x V'(x). Decays like x^-(2+alpha) for admissible tails.
double eval_U(const Potential& pot, double x);

struct TailReport {
    Vec x;            // log-spaced samples
    Vec ratio;        // -4 x^2 V(x)
    double fitted_alpha = 0.0; // least-squares slope of log|ratio-1| vs log x, negated
    bool exact_tail = false;   // all ratios equal 1 to roundoff; fitted_alpha meaningless
};

/// Samples -4x^2 V on [x_min, x_max] and fits the correction decay rate.
/// Throws NonDecayingTail when |ratio - 1| fails to decrease (10% slack)
/// across the top decade.
TailReport check_tail(const Potential& pot, double x_min, double x_max, int n);

/// Number of Neumann eigenvalues in [E_floor, 0), by sign-change shooting at
/// energy just below zero (Sturm oscillation). Throws FloorTooHigh when the
/// solution at E_floor already oscillates.
int count_bound_states(const Potential& pot, double E_floor, double x_max);

/// Shooting zero count at a single energy; exposed for refinement tests.
int shooting_zero_count(const Potential& pot, double E, double x_max, double dx_sample = 0.05);

} // namespace distwave
