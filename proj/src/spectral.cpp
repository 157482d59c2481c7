#include "distwave/spectral.hpp"

#include <cmath>
#include <sstream>

#include "distwave/util.hpp"

namespace distwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct EvalWindow {
    double e1, e2; // two Wronskian evaluation points inside [5, X*/2]
};

EvalWindow eval_window(const Potential& pot, double xi, const JostOptions& jopt) {
    if (pot.tail != TailKind::inverse_square_quarter) {
        // seed is exact here, so the overlap-window geometry is immaterial;
        // stay close to the origin to limit phase drift
        return {10.0, 20.0};
    }
    const double x_star_nominal = std::max(jopt.X0, jopt.c / xi);
    const double lo = 5.0, hi = 0.5 * x_star_nominal;
    EvalWindow w;
    w.e1 = 0.5 * (lo + hi);
    w.e2 = lo + 0.75 * (hi - lo);
    return w;
}

} // namespace

SpectralPoint spectral_point(const Potential& pot, double xi, double eval_x,
                             const JostOptions& jopt, const Ode2Options& oopt) {
    if (xi <= 0) throw DomainError("spectral_point: xi must be positive");
    EvalWindow w = eval_window(pot, xi, jopt);
    if (eval_x > 0) {
        w.e1 = eval_x;
        w.e2 = eval_x * 1.25 + 1.0;
    }

    Vec path(3);
    path << 0.0, w.e1, w.e2;
    RegularSolution reg = solve_regular(pot, xi * xi, path, oopt);

    Vec jpath(2);
    jpath << w.e1, w.e2;
    JostSolution jost = solve_jost(pot, xi, jpath, jopt);

    auto wronsk = [&](long ri, long ji, const Vec& g, const Vec& dg) {
        return jost.f[ji] * dg[ri] - jost.df[ji] * g[ri];
    };
    const std::complex<double> Wp1 = wronsk(1, 0, reg.phi, reg.dphi);
    const std::complex<double> Wp2 = wronsk(2, 1, reg.phi, reg.dphi);
    const std::complex<double> Wt1 = wronsk(1, 0, reg.theta, reg.dtheta);

    SpectralPoint p;
    p.xi = xi;
    p.W_phi = Wp1;
    p.W_theta = Wt1;
    p.wronskian_spread = std::abs(Wp1 - Wp2) / std::max(std::abs(Wp1), 1e-300);
    if (std::abs(Wp1) < 1e-12)
        throw DegenerateWronskian("spectral_point: |W(f+, phi)| < 1e-12 at xi = " +
                                  format_double(xi));
    p.m = -Wt1 / Wp1;
    p.rho = p.m.imag() / kPi;
    p.rho_tilde = 2.0 * xi * p.rho;
    p.a_coeff = std::complex<double>(0, -1) * std::conj(Wp1) / (2.0 * xi);
    return p;
}

double small_lambda_rho_model(const ZeroEnergyCoefficients& z, double lambda) {
    if (lambda <= 0) throw DomainError("small_lambda_rho_model: lambda must be positive");
    if (z.a1 == 0.0) return 1.0 / (2.0 * z.a2 * z.a2);
    const double bracket = 0.5 * z.a1 * std::log(lambda) + z.gamma0 * z.a1 - z.a2;
    return 1.0 / (0.5 * kPi * kPi * z.a1 * z.a1 + 2.0 * bracket * bracket);
}

bool classify_resonance(const ZeroEnergyCoefficients& z, double threshold) {
    return std::abs(z.a1) <= threshold * std::max(std::abs(z.a2), 1.0);
}

namespace {

// One-interval re-integration with classical RK4 substeps; certifies that the
// stored (phi, phi') pairs are consistent with the column's equation.
double certify_column(const Potential& pot, double lambda, const Vec& x, const Vec& phi,
                      const Vec& dphi) {
    const double dx = x[1] - x[0];
    const double xi = std::sqrt(std::max(lambda, 0.0));
    const int sub = std::max(1, int(std::ceil(xi * dx / 0.05)));
    const double scale = std::max(1.0, xi);
    double mag = 1.0;
    for (long i = 0; i < x.size(); ++i)
        mag = std::max(mag, std::max(std::abs(phi[i]), std::abs(dphi[i]) / scale));
    double worst = 0.0;
    for (long i = 0; i + 1 < x.size(); ++i) {
        double y0 = phi[i], y1 = dphi[i];
        const double h = dx / sub;
        double t = x[i];
        for (int s = 0; s < sub; ++s) {
            auto f = [&](double tt, double a, double b, double& da, double& db) {
                da = b;
                db = (pot.eval(tt) - lambda) * a;
            };
            double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
            f(t, y0, y1, k1a, k1b);
            f(t + 0.5 * h, y0 + 0.5 * h * k1a, y1 + 0.5 * h * k1b, k2a, k2b);
            f(t + 0.5 * h, y0 + 0.5 * h * k2a, y1 + 0.5 * h * k2b, k3a, k3b);
            f(t + h, y0 + h * k3a, y1 + h * k3b, k4a, k4b);
            const double ny0 = y0 + h / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a);
            const double ny1 = y1 + h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
            y0 = ny0;
            y1 = ny1;
            t += h;
        }
        const double err =
            std::max(std::abs(y0 - phi[i + 1]), std::abs(y1 - dphi[i + 1]) / scale);
        worst = std::max(worst, err / mag);
    }
    return worst;
}

} // namespace

SpectralTable build_spectral_table(const Potential& pot, const SpectralGridSpec& spec,
                                   const JostOptions& jopt, int threads) {
    if (!(0 < spec.xi_min && spec.xi_min < spec.xi_max))
        throw ConfigError("build_spectral_table: need 0 < xi_min < xi_max");
    if (spec.dxi_linear <= 0) throw ConfigError("build_spectral_table: dxi_linear must be positive");

    SpectralTable t;
    t.potential_name = pot.name;
    t.tail = pot.tail;
    t.dxi_linear = spec.dxi_linear;
    t.x = uniform_grid(spec.x_max, spec.dx);
    t.wx = simpson_weights(t.x);

    // log segment up to where its spacing would exceed the linear resolution
    const double du = std::log(10.0) / double(spec.log_points_per_decade);
    double xi_break = std::min(1.0, spec.dxi_linear / du);
    xi_break = std::max(xi_break, spec.xi_min * 10.0);
    xi_break = std::min(xi_break, spec.xi_max / 2.0);

    int n_log = std::max(3, int(std::ceil(std::log10(xi_break / spec.xi_min) *
                                          spec.log_points_per_decade)) + 1);
    if (n_log % 2 == 0) ++n_log; // even interval count for Simpson-in-log
    Vec xi_log = log_grid(spec.xi_min, xi_break, n_log);
    Vec w_log = log_simpson_weights(xi_log);

    long n_lin = std::lround(std::ceil((spec.xi_max - xi_break) / spec.dxi_linear));
    if (n_lin < 2) n_lin = 2;
    if (n_lin % 2 != 0) ++n_lin;
    const double h_lin = (spec.xi_max - xi_break) / double(n_lin);
    Vec xi_lin(n_lin + 1);
    for (long i = 0; i <= n_lin; ++i) xi_lin[i] = xi_break + h_lin * double(i);
    Vec w_lin = simpson_weights(xi_lin);

    const long n_xi = n_log + n_lin; // xi_break shared between segments
    t.xi.resize(n_xi);
    t.wxi = Vec::Zero(n_xi);
    t.xi.head(n_log) = xi_log;
    t.wxi.head(n_log) = w_log;
    t.wxi[n_log - 1] += w_lin[0];
    for (long i = 1; i <= n_lin; ++i) {
        t.xi[n_log - 1 + i] = xi_lin[i];
        t.wxi[n_log - 1 + i] = w_lin[i];
    }
    t.n_log = n_log;

    t.phi.resize(t.x.size(), n_xi);
    t.rho.resize(n_xi);
    t.rho_tilde.resize(n_xi);
    t.m.resize(n_xi);
    t.a.resize(n_xi);

    std::vector<double> cert(n_xi, 0.0);
    std::vector<std::string> failures(n_xi);
    parallel_for(
        n_xi,
        [&](long j) {
            try {
                const double xi = t.xi[j];
                RegularSolution reg = solve_regular(pot, xi * xi, t.x, Ode2Options{}, false);
                t.phi.col(j) = reg.phi;
                cert[j] = certify_column(pot, xi * xi, t.x, reg.phi, reg.dphi);
                SpectralPoint p = spectral_point(pot, xi, 0.0, jopt);
                if (!(p.rho > 0))
                    throw DegenerateWronskian("nonpositive spectral density");
                t.rho[j] = p.rho;
                t.rho_tilde[j] = p.rho_tilde;
                t.m[j] = p.m;
                t.a[j] = p.a_coeff;
            } catch (const std::exception& e) {
                failures[j] = e.what();
            }
        },
        threads);
    for (long j = 0; j < n_xi; ++j) {
        if (!failures[j].empty()) {
            std::ostringstream os;
            os << "build_spectral_table: column xi = " << format_double(t.xi[j]) << ": "
               << failures[j];
            throw std::runtime_error(os.str());
        }
        t.max_cert_residual = std::max(t.max_cert_residual, cert[j]);
    }

    // zero-energy tail data and resonance classification
    {
        Vec zg = zero_energy_grid(spec.zero_energy_x_max);
        RegularSolution s0 = solve_regular(pot, 0.0, zg);
        t.zero = fit_zero_energy_coeffs(s0, spec.zero_energy_fit_lo, spec.zero_energy_x_max);
        t.zero.resonant = classify_resonance(t.zero);
    }

    // spectral mass of the dropped band [0, xi_min]
    if (pot.tail == TailKind::inverse_square_quarter) {
        Vec band = log_grid(spec.xi_min * 1e-8, spec.xi_min, 200);
        Vec wb = log_trapezoid_weights(band);
        double s = 0;
        for (long i = 0; i < band.size(); ++i)
            s += wb[i] * 2.0 * band[i] * small_lambda_rho_model(t.zero, band[i] * band[i]);
        t.truncation_measure = s;
    } else {
        t.truncation_measure = t.rho_tilde[0] * spec.xi_min;
    }
    return t;
}

double max_xi_spacing(const SpectralTable& t) {
    double m = 0;
    for (long i = 1; i < t.xi.size(); ++i) m = std::max(m, t.xi[i] - t.xi[i - 1]);
    return m;
}

} // namespace distwave
