#pragma once

#include <complex>
#include <string>

#include "distwave/odesolve.hpp"

namespace distwave {

// ---------------------------------------------------------------------------
// Weyl-Titchmarsh data at one frequency: Wronskians of the Jost solution
// against the regular pair, the m-function m = W(theta, f+)/W(f+, phi), the
// spectral density rho = Im(m)/pi, its xi-form rho_tilde = 2 xi rho, and the
// connection coefficient a with W(f+, phi) = -2i xi conj(a).
// ---------------------------------------------------------------------------
struct SpectralPoint {
    double xi = 0;
    std::complex<double> W_phi, W_theta; // W(f+, phi), W(f+, theta)
    std::complex<double> m, a_coeff;
    double rho = 0, rho_tilde = 0;
    double wronskian_spread = 0; // relative drift between the two evaluation points
};

SpectralPoint spectral_point(const Potential& pot, double xi, double eval_x = 0.0,
                             const JostOptions& jopt = {}, const Ode2Options& oopt = {});

/// Leading closed-form factor of the spectral density for small lambda:
///   1 / ( pi^2/2 a1^2 + 2 [ a1/2 log(lambda) + gamma0 a1 - a2 ]^2 ),
/// degenerating to 1/(2 a2^2) when a1 = 0.
double small_lambda_rho_model(const ZeroEnergyCoefficients& z, double lambda);

/// Resonant iff |a1| <= threshold * max(|a2|, 1).
bool classify_resonance(const ZeroEnergyCoefficients& z, double threshold = 1e-3);

// ---------------------------------------------------------------------------
// Discretized diagonalization: phi(x_i, xi_j^2) columns with quadrature
// weights on both grids. The xi grid is log-spaced up to the point where the
// log spacing would exceed the requested linear resolution, then uniform; the
// linear segment carries composite Simpson weights, the log segment
// trapezoid-in-log weights.
// ---------------------------------------------------------------------------
struct SpectralGridSpec {
    double x_max = 120.0;
    double dx = 0.02;
    double xi_min = 1e-3;
    double xi_max = 8.0;
    int log_points_per_decade = 48;
    double dxi_linear = 0.02; // Nyquist bound: dxi (t + x_max) <= pi/4
    double zero_energy_x_max = 1e7;
    double zero_energy_fit_lo = 1e6;
};

struct SpectralTable {
    std::string potential_name;
    TailKind tail = TailKind::none;
    Vec x, wx;           // uniform grid + Simpson weights
    Vec xi, wxi;         // mixed grid + plain-dxi quadrature weights
    long n_log = 0;      // nodes belonging to the log segment
    Mat phi;             // N_x by N_xi
    Vec rho, rho_tilde;
    CVec m, a;
    ZeroEnergyCoefficients zero;
    double truncation_measure = 0; // estimated spectral mass of the dropped [0, xi_min]
    double max_cert_residual = 0;  // per-column one-step re-integration defect
    double dxi_linear = 0;

    /// Quadrature weights against rho_tilde d(xi).
    Vec weights() const { return (wxi.array() * rho_tilde.array()).matrix(); }
};

SpectralTable build_spectral_table(const Potential& pot, const SpectralGridSpec& spec,
                                   const JostOptions& jopt = {}, int threads = 1);

/// Largest consecutive xi spacing (the Nyquist-relevant resolution).
double max_xi_spacing(const SpectralTable& t);

} // namespace distwave
