#pragma once

#include "distwave/spectral.hpp"

namespace distwave {

enum class Parity { even, odd, none };

struct GridFunction {
    Vec grid;
    Vec values;
    Parity parity = Parity::none;
};

struct TransformStats {
    bool truncation_warning = false;
    double tail_magnitude = 0; // largest |f| over the last 5% of the grid
};

/// F f(xi) = int_0^inf phi(x, xi^2) f(x) dx by composite Simpson per column.
/// Throws GridMismatch if f is not sampled on the table's x grid. Sets the
/// truncation warning when |f| has not decayed below 1e-10 of its peak.
Vec forward(const SpectralTable& t, const Vec& f, TransformStats* stats = nullptr);
CVec forward(const SpectralTable& t, const CVec& f, TransformStats* stats = nullptr);

/// F^{-1} g(x) = int_0^inf phi(x, xi^2) g(xi) rho_tilde(xi) dxi.
Vec inverse(const SpectralTable& t, const Vec& g_hat);
CVec inverse(const SpectralTable& t, const CVec& g_hat);

/// L2 norms against the two quadratures.
double norm_x(const SpectralTable& t, const Vec& f);
double norm_x(const SpectralTable& t, const CVec& f);
double norm_rho(const SpectralTable& t, const Vec& g_hat);
double norm_rho(const SpectralTable& t, const CVec& g_hat);

/// | ||F f||^2_rho - ||f||^2 |, the unitarity defect of the discretization.
double plancherel_defect(const SpectralTable& t, const Vec& f);

struct DiagonalizationCheck {
    Vec lhs;               // F(-f'' + V f)
    Vec rhs;               // xi^2 F f
    double discrepancy;    // ||lhs - rhs||_rho
    double weighted_scale; // ||<xi>^2 F f||_rho
};

/// Compares F(Af) with xi^2 F f. Throws BoundaryViolation when |f'(0)| is not
/// negligible (the even boundary condition).
DiagonalizationCheck apply_A_diag(const SpectralTable& t, const Potential& pot, const Vec& f);

/// || <xi>^s F f ||_rho, the transform-side Sobolev norm of order s.
double sobolev_norm_distorted(const SpectralTable& t, const Vec& f, double s);
double sobolev_norm_rho_side(const SpectralTable& t, const Vec& g_hat, double s);
double sobolev_norm_rho_side(const SpectralTable& t, const CVec& g_hat, double s);

/// Grid H^k norm by stencils (k <= 2), for physical-side comparisons.
double grid_sobolev_norm(const Vec& x, const Vec& f, int k, bool even_at_zero);

/// Self-inverse order-zero transform F(xi) = int (x xi)^{1/2} J0(x xi) f(x) dx
/// on a uniform grid; the output frequency grid equals the input grid.
Vec hankel_transform(const Vec& x, const Vec& f);

} // namespace distwave
