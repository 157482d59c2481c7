#pragma once

#include <complex>
#include <functional>

#include "distwave/grid.hpp"
#include "distwave/potential.hpp"

namespace distwave {

struct Ode2Options {
    double rtol = 1e-10;
    double atol = 1e-13;
    double max_factor = 5.0;
    double min_factor = 0.2;
};

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4) for the linear system y'' = c(x) y, templated
// on the state scalar (the coefficient is always real). Values and first
// derivatives are recorded at every point of `x`; integration runs from x[0]
// to x[n-1] in either direction.
// ---------------------------------------------------------------------------
template <typename Scalar, typename Coeff>
void integrate_linear_second_order(Coeff&& c, const Eigen::VectorXd& x, Scalar y0, Scalar dy0,
                                   Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& f,
                                   Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& df,
                                   const Ode2Options& opt) {
    using State = Eigen::Matrix<Scalar, 2, 1>;
    const long n = x.size();
    f.resize(n);
    df.resize(n);
    State y;
    y << y0, dy0;
    f[0] = y[0];
    df[0] = y[1];

    auto rhs = [&](double t, const State& s) -> State {
        State r;
        r << s[1], Scalar(c(t)) * s[0];
        return r;
    };

    const double span = std::abs(x[n - 1] - x[0]);
    const double h_min = 1e-13 * (span + 1.0);
    const double dir = (x[n - 1] >= x[0]) ? 1.0 : -1.0;

    double t = x[0];
    double h = dir * std::min(0.1 / std::sqrt(std::abs(c(x[0])) + 1.0), 0.1 * (span + 1e-30));
    State k1 = rhs(t, y);
    bool k1_fresh = true;

    for (long target = 1; target < n; ++target) {
        const double tt = x[target];
        while (dir * (tt - t) > 0) {
            if (dir * (t + h) > dir * tt) h = tt - t;
            if (std::abs(h) < h_min) throw StepFailure("integrate_linear_second_order: step underflow");
            if (!k1_fresh) {
                k1 = rhs(t, y);
                k1_fresh = true;
            }
            const State k2 = rhs(t + 0.2 * h, y + h * (0.2 * k1));
            const State k3 = rhs(t + 0.3 * h, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
            const State k4 = rhs(t + 0.8 * h, y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
            const State k5 = rhs(t + 8.0 / 9.0 * h,
                                 y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                                          64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
            const State k6 = rhs(t + h, y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                                                 46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                                                 5103.0 / 18656.0 * k5));
            const State y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                                      2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
            const State k7 = rhs(t + h, y5);
            const State ev = h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4 -
                                  17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * k7);
            double err = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double scale =
                    opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(ev[i]) / scale);
            }
            if (err <= 1.0) {
                t += h;
                y = y5;
                k1 = k7;
                k1_fresh = true;
            } else {
                k1_fresh = true; // k1 still valid at unchanged t
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::min(opt.max_factor, std::max(opt.min_factor, fac));
            h *= fac;
        }
        f[target] = y[0];
        df[target] = y[1];
        t = tt;
    }
}

// Real convenience overload used by the shooting counter.
template <typename Coeff>
void integrate_linear_second_order(Coeff&& c, const Eigen::VectorXd& x, double y0, double dy0,
                                   Eigen::VectorXd& f, Eigen::VectorXd& df, const Ode2Options& opt) {
    integrate_linear_second_order<double>(std::forward<Coeff>(c), x, y0, dy0, f, df, opt);
}

// ---------------------------------------------------------------------------
// Regular solutions of -f'' + V f = lambda f with data
//   phi(0) = -1, phi'(0) = 0,   theta(0) = 0, theta'(0) = 1.
// ---------------------------------------------------------------------------
struct RegularSolution {
    double lambda = 0.0;
    Vec x;
    Vec phi, dphi, theta, dtheta;
};

/// with_theta = false skips the second member of the fundamental system
/// (used for transform columns, where only phi is needed).
RegularSolution solve_regular(const Potential& pot, double lambda, const Vec& x_grid,
                              const Ode2Options& opt = {}, bool with_theta = true);

/// Wronskian theta*phi' - theta'*phi at every grid point (identically 1 for
/// the exact solutions).
Vec wronskian_regular(const RegularSolution& s);

// ---------------------------------------------------------------------------
// Outgoing Jost solution of -f'' + V f = xi^2 f with f ~ e^{i xi x} at
// infinity, by backward integration from an asymptotic seed.
// ---------------------------------------------------------------------------
enum class SeedKind { hankel, plane_wave };

struct JostOptions {
    double X0 = 60.0;   // minimal seeding point for inverse-square tails
    double c = 40.0;    // seeding phase floor: X* >= c / xi
    double x_star_max = 1e7;
    double rtol = 1e-11;
    // When unset the seed follows the potential's tail class: Hankel seeds for
    // inverse-square-quarter tails, plane waves otherwise (where they are
    // exact or exponentially accurate).
    bool force_seed = false;
    SeedKind forced = SeedKind::plane_wave;
};

struct JostSolution {
    double xi = 0.0;
    Vec x;        // ascending evaluation points
    CVec f, df;
    SeedKind seed_kind = SeedKind::plane_wave;
    double x_star = 0.0;
};

JostSolution solve_jost(const Potential& pot, double xi, const Vec& x_grid,
                        const JostOptions& opt = {});

/// W(f, conj f) = f conj(f)' - f' conj(f) at each point; equals -2i xi for the
/// exact Jost solution.
CVec wronskian_jost_conj(const JostSolution& s);

// ---------------------------------------------------------------------------
// Tail expansion of the zero-energy solutions:
//   phi0 ~ a1 sqrt(x) log x + a2 sqrt(x),  theta0 ~ b1 sqrt(x) log x + b2 sqrt(x).
// ---------------------------------------------------------------------------
struct ZeroEnergyCoefficients {
    double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
    bool resonant = false;
    double gamma0 = 0.0;      // Euler-Mascheroni minus log 2
    double det_defect = 0.0;  // |a1 b2 - a2 b1 - 1|
    double fit_residual = 0.0; // relative L2 misfit of the two-term model
};

/// Least-squares fit of (phi0, theta0) against {sqrt(x) log x, sqrt(x)} over
/// [x_lo, x_hi]. Throws IllConditionedFit when the Gram condition exceeds 1e12.
ZeroEnergyCoefficients fit_zero_energy_coeffs(const RegularSolution& sol0, double x_lo, double x_hi);

/// Grid for the zero-energy solve: {0} followed by log-spaced points.
Vec zero_energy_grid(double x_hi, int points_per_decade = 24, double x_first = 1e-2);

} // namespace distwave
