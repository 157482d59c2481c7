#pragma once

#include <functional>

#include "distwave/evolution.hpp"

namespace distwave {

/// D f = (coordinate) * f' on an arbitrary increasing grid.
Vec apply_D(const Vec& grid, const Vec& f);

/// Transform-side deviation operator, composed from certified pieces:
///   B g = F( D F^{-1} g ) + D g + g,
/// which vanishes identically in the free case.
Vec apply_B(const SpectralTable& t, const Vec& g_hat);

/// Physical-side avatar E f = F^{-1} B F f.
Vec apply_E(const SpectralTable& t, const Vec& f);

struct BKernel {
    Vec xi;        // shared row/column grid
    Mat F;         // F(xi, eta) = int phi(x, xi^2) phi(x, eta^2) U(x) dx
    Vec U;         // U(x) = -2V - xV' on the table's x grid
    Vec eta_rho;   // eta * rho(eta^2) attached to the column variable
};

BKernel kernel_F(const SpectralTable& t, const Potential& pot);

/// sup_xi | xi^2 B f - B(|.|^2 f) - 2 int F(xi,eta) eta rho(eta^2) f(eta) deta |.
double offdiag_identity_residual(const SpectralTable& t, const BKernel& k, const Vec& f_hat);

/// Principal-value application of the off-diagonal operator
///   B0 f(xi) = 2 PV int F(xi,eta)/(xi^2-eta^2) eta rho(eta^2) f(eta) deta
/// by symmetric exclusion plus the first-order Taylor correction across the
/// gap. The half-width is given on the table's linear segment and scales with
/// the local spacing elsewhere; throws ExclusionTooWide beyond eight local
/// grid spacings.
Vec singular_B0(const SpectralTable& t, const BKernel& k, const Vec& f_hat,
                double exclusion_half_width);

/// Grid-level principal-value core; the exclusion is delta_steps local
/// spacings around each node.
Vec pv_apply(const Vec& xi, const Vec& wxi, const Vec& eta_rho, const Mat& F, const Vec& f,
             double delta_steps);

/// Diagonal multiplier of B: the closed-form value 2 pi xi^2 rho Re(a' conj a)
/// and a narrowband extraction (B applied to a transform-side bump centered
/// at each probe), reported side by side.
struct DiagonalComparison {
    Vec xi_probe;
    Vec h_formula;
    Vec h_narrowband;
    double max_disagreement = 0;
};

DiagonalComparison diagonal_multiplier(const SpectralTable& t, const Vec& xi_probe,
                                       double bump_width);

/// L2 residual of the scaling-field commutation through the cosine evolution:
///   S[cos(t sqrt A) f] = cos(t sqrt A)(D f) + [E, cos(t sqrt A)] f.
double commutator_S_cos_residual(const SpectralTable& t, const Vec& f, double time);

/// Sine analogue with forcing D g + g.
double commutator_S_sin_residual(const SpectralTable& t, const Vec& g, double time);

/// Nested transform-side commutators ad_D^m(B), m in {1, 2}.
Vec iterated_commutator_adDB(const SpectralTable& t, int m, const Vec& f_hat);

/// Residual of the scaling-field identity through the inhomogeneous solve:
///   S u(t) = int sin((t-s)sqrt A)/sqrt A [s ds src + D src](s) ds + 2 u(t)
///            + int [E, sin((t-s)sqrt A)/sqrt A] src(s) ds,
/// with u the Duhamel solution. src and its time derivative are callables on
/// the table's x grid. Relative to the norm of S u(t).
double duhamel_S_commutation_residual(const SpectralTable& t,
                                      const std::function<Vec(double)>& src,
                                      const std::function<Vec(double)>& dsrc_ds, double time,
                                      int n_s);

} // namespace distwave
