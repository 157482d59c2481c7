#pragma once

#include <optional>
#include <string>

#include "distwave/evolution.hpp"

namespace distwave {

enum class EstimateId {
    dispersive_half,
    dispersive_one,
    energy,
    vector_field,
    local_energy_decay,
    divergence_form
};

std::string to_string(EstimateId id);

struct EstimateReport {
    EstimateId estimate_id = EstimateId::energy;
    Vec t_samples;
    Vec lhs, rhs;                 // both nonnegative
    double sup_ratio = 0;         // max lhs/rhs over samples with rhs > 0
    std::optional<double> fitted_exponent;
    double exponent_ci95 = 0;     // half-width of the 95% band
    double trend_slope = 0;       // d log(ratio) / d log(t) on the top half
    std::string config_hash;
};

/// Ordinary least squares of log(y) on log(t) for t >= t_lo, with the 95%
/// confidence half-width of the slope.
struct PowerFit {
    double slope = 0, intercept = 0, ci95 = 0;
    int n = 0;
};
PowerFit fit_loglog(const Vec& t, const Vec& y, double t_lo);

/// Weighted sup-norm decay of the full evolution:
///   lhs(t) = sup_x <x>^-sigma |u(t,x)|,
///   rhs(t) = <t>^-sigma ( ||<x>^sigma f'||_L1 + ||<x>^sigma f||_L1 + ||<x>^sigma g||_L1 ),
/// with the decay exponent fitted on t >= fit_t_lo.
EstimateReport verify_dispersive(const SpectralTable& table, const Vec& f, const Vec& g,
                                 double sigma, const Vec& t_grid, double fit_t_lo = 10.0);

/// Transform-side energy pair at order (k, l):
///   lhs(t)^2 = || <xi>^k xi dt^l u ||^2 + || <xi>^k dt^{l+1} u ||^2,
///   rhs^2    = || <xi>^{k+l} xi F f ||^2 + || <xi>^{k+l} F g ||^2.
/// At k = l = 0 the ratio is identically one (conservation).
EstimateReport verify_energy(const SpectralTable& table, const Vec& f, const Vec& g, int k, int l,
                             const Vec& t_grid);

/// Scaling-field analogue with S^m u assembled from the transform-side time
/// multipliers and grid stencils; refuses resonant potentials.
EstimateReport verify_vector_field(const SpectralTable& table, const Vec& f, const Vec& g, int m,
                                   int k, const Vec& t_grid);

/// Cumulative local-energy integrals cum(T) = int_0^T ||w dt^l S^m u(t)||^2_{H^k} dt
/// at increasing checkpoints; lhs = sqrt(cum(T_j)). variant "exp" evolves
/// e^{it sqrt A} f with weight <x>^{-1/2-eps}; variant "sine" evolves
/// sin(t sqrt A)/sqrt A g with weight <x>^{-1} and rhs ||<x>^{1/2+eps} D^j g||.
EstimateReport verify_local_energy_decay(const SpectralTable& table, const Vec& f, int m, int k,
                                         int l, const Vec& T_checkpoints, double dt, double eps,
                                         bool sine_variant = false);

/// Divergence-form data: lhs(t) = || dt^l grad sin(t sqrt A)/sqrt A (g') ||_{H^k},
/// rhs = || g ||_{H^{1+k+l}}; g odd. Refuses resonant potentials.
EstimateReport verify_divergence_form(const SpectralTable& table, const Vec& g_odd, int k, int l,
                                      const Vec& t_grid);

} // namespace distwave
