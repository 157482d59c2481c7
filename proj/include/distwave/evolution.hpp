#pragma once

#include <functional>
#include <vector>

#include "distwave/transform.hpp"

namespace distwave {

struct WaveState {
    double t = 0;
    Vec u, ut;
};

struct EnergyValue {
    double total = 0, kinetic = 0, gradient = 0, potential_part = 0;
};

/// Throws NyquistViolation unless max_dxi * (t + x_max) <= pi/4.
void check_nyquist(const SpectralTable& table, double t);

/// Wave evolution through the diagonalized representation:
///   u(t) = F^{-1}[ cos(t xi) F f + sin(t xi)/xi F g ],
/// with du/dt from the differentiated multipliers (never by time differences).
WaveState propagate(const SpectralTable& table, const Vec& f, const Vec& g, double t);

/// Same with precomputed transforms of the data (cheap when sweeping t).
WaveState propagate_hat(const SpectralTable& table, const Vec& Ff, const Vec& Fg, double t);

/// Inhomogeneous solution u(t) = int_0^t sin((t-s) xi)/xi F src(s) ds by
/// composite Simpson with n_s intervals in s. Requires src(0) = 0.
WaveState duhamel(const SpectralTable& table, const std::function<Vec(double)>& src, double t,
                  int n_s);

/// (1/2) int (ut^2 + ux^2 + V u^2) dx with Simpson weights; ux by centered
/// stencils with the even closure at x = 0.
EnergyValue energy(const SpectralTable& table, const Potential& pot, const WaveState& s);

/// Band-limited sine kernel 2 int_band sin(t xi) phi(x,.) phi(y,.) rho dxi.
double propagator_kernel(const SpectralTable& table, double x, double y, double t, double xi_lo,
                         double xi_hi);

// ---------------------------------------------------------------------------
// Independent leapfrog time-domain solver on its own uniform grid [0, L] with
// the even boundary condition at 0. No absorbing boundary: L must exceed
// x_support + T so nothing reflected returns to the comparison window.
// ---------------------------------------------------------------------------
struct FdtdResult {
    Vec x;
    std::vector<WaveState> states;       // at the requested output times
    double discrete_energy_drift = 0;    // relative drift of the staggered invariant
};

FdtdResult fdtd_solve(const Potential& pot, const std::function<double(double)>& f,
                      const std::function<double(double)>& g, double T, double dx, double dt,
                      double L, double x_support, const std::vector<double>& out_times);

} // namespace distwave
