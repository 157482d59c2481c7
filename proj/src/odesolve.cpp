#include "distwave/odesolve.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "distwave/specfun.hpp"

namespace distwave {

RegularSolution solve_regular(const Potential& pot, double lambda, const Vec& x_grid,
                              const Ode2Options& opt, bool with_theta) {
    if (x_grid.size() < 2 || x_grid[0] != 0.0)
        throw GridMismatch("solve_regular: grid must start at 0");
    if (lambda < 0) throw DomainError("solve_regular: lambda must be nonnegative");
    RegularSolution s;
    s.lambda = lambda;
    s.x = x_grid;
    auto c = [&](double x) { return pot.eval(x) - lambda; };
    integrate_linear_second_order(c, x_grid, -1.0, 0.0, s.phi, s.dphi, opt);
    if (with_theta) integrate_linear_second_order(c, x_grid, 0.0, 1.0, s.theta, s.dtheta, opt);
    return s;
}

Vec wronskian_regular(const RegularSolution& s) {
    return (s.theta.array() * s.dphi.array() - s.dtheta.array() * s.phi.array()).matrix();
}

JostSolution solve_jost(const Potential& pot, double xi, const Vec& x_grid,
                        const JostOptions& opt) {
    if (xi <= 0) throw DomainError("solve_jost: xi must be positive");
    if (x_grid.size() < 1) throw GridMismatch("solve_jost: empty evaluation grid");
    for (long i = 1; i < x_grid.size(); ++i)
        if (x_grid[i] <= x_grid[i - 1]) throw GridMismatch("solve_jost: grid must be increasing");

    SeedKind kind;
    if (opt.force_seed) {
        kind = opt.forced;
    } else {
        kind = (pot.tail == TailKind::inverse_square_quarter) ? SeedKind::hankel
                                                              : SeedKind::plane_wave;
    }

    const double top = x_grid[x_grid.size() - 1];
    double x_star;
    if (kind == SeedKind::hankel) {
        x_star = std::max(opt.X0, opt.c / xi);
        x_star = std::max(x_star, top);
    } else if (pot.tail == TailKind::inverse_square_quarter) {
        // plane-wave seed against a power tail: keep the configured rule
        x_star = std::max({opt.X0, opt.c / xi, top});
    } else {
        // seed is exact (free) or exponentially accurate; stay close to the
        // evaluation window to limit phase drift
        x_star = std::max(25.0, top);
    }
    if (x_star > opt.x_star_max)
        throw SeedOutOfRange("solve_jost: seeding point exceeds configured maximum domain");

    std::complex<double> f0, df0;
    if (kind == SeedKind::hankel) {
        f0 = hankel_h(x_star * xi, +1);
        df0 = xi * hankel_h_deriv(x_star * xi, +1);
    } else {
        const std::complex<double> e(std::cos(x_star * xi), std::sin(x_star * xi));
        f0 = e;
        df0 = std::complex<double>(0.0, xi) * e;
    }

    // integration grid: seed point, then the requested points in descending order
    Vec path(x_grid.size() + 1);
    path[0] = x_star;
    for (long i = 0; i < x_grid.size(); ++i) path[i + 1] = x_grid[x_grid.size() - 1 - i];
    if (path[1] == x_star) {
        // top evaluation point coincides with the seed; drop the duplicate
        path = path.tail(path.size() - 1).eval();
    }

    Ode2Options o = {};
    o.rtol = opt.rtol;
    auto c = [&](double x) { return pot.eval(x) - xi * xi; };
    CVec fi, dfi;
    integrate_linear_second_order<std::complex<double>>(c, path, f0, df0, fi, dfi, o);

    JostSolution s;
    s.xi = xi;
    s.x = x_grid;
    s.seed_kind = kind;
    s.x_star = x_star;
    s.f.resize(x_grid.size());
    s.df.resize(x_grid.size());
    for (long i = 0; i < x_grid.size(); ++i) {
        s.f[i] = fi[path.size() - 1 - i];
        s.df[i] = dfi[path.size() - 1 - i];
    }
    return s;
}

CVec wronskian_jost_conj(const JostSolution& s) {
    CVec w(s.f.size());
    for (long i = 0; i < s.f.size(); ++i)
        w[i] = s.f[i] * std::conj(s.df[i]) - s.df[i] * std::conj(s.f[i]);
    return w;
}

Vec zero_energy_grid(double x_hi, int points_per_decade, double x_first) {
    const int decades = int(std::ceil(std::log10(x_hi / x_first)));
    const int n = std::max(2, decades * points_per_decade);
    Vec tail = log_grid(x_first, x_hi, n);
    Vec g(n + 1);
    g[0] = 0.0;
    g.tail(n) = tail;
    return g;
}

namespace {

struct TailFit {
    double c_log = 0, c_plain = 0, rel_residual = 0;
};

TailFit fit_sqrt_log_basis(const Vec& x, const Vec& y, double x_lo, double x_hi) {
    std::vector<long> idx;
    for (long i = 0; i < x.size(); ++i)
        if (x[i] >= x_lo && x[i] <= x_hi) idx.push_back(i);
    if (idx.size() < 4) throw IllConditionedFit("fit_zero_energy_coeffs: too few points in window");

    Mat B(idx.size(), 2);
    Vec rhs(idx.size());
    for (size_t r = 0; r < idx.size(); ++r) {
        const double t = x[idx[r]];
        B(r, 0) = std::sqrt(t) * std::log(t);
        B(r, 1) = std::sqrt(t);
        rhs[r] = y[idx[r]];
    }
    const Mat gram = B.transpose() * B;
    Eigen::JacobiSVD<Mat> svd(gram);
    const double cond = svd.singularValues()(0) / svd.singularValues()(1);
    if (!(cond < 1e12)) throw IllConditionedFit("fit_zero_energy_coeffs: Gram condition > 1e12");

    const Eigen::Vector2d coef = gram.ldlt().solve(B.transpose() * rhs);
    TailFit f;
    f.c_log = coef[0];
    f.c_plain = coef[1];
    const double denom = std::max(rhs.norm(), 1e-300);
    f.rel_residual = (B * coef - rhs).norm() / denom;
    return f;
}

} // namespace

ZeroEnergyCoefficients fit_zero_energy_coeffs(const RegularSolution& sol0, double x_lo, double x_hi) {
    if (sol0.lambda != 0.0) throw DomainError("fit_zero_energy_coeffs: solution must be at lambda = 0");
    if (!(x_lo < x_hi)) throw DomainError("fit_zero_energy_coeffs: empty window");
    const TailFit fa = fit_sqrt_log_basis(sol0.x, sol0.phi, x_lo, x_hi);
    const TailFit fb = fit_sqrt_log_basis(sol0.x, sol0.theta, x_lo, x_hi);
    ZeroEnergyCoefficients z;
    z.a1 = fa.c_log;
    z.a2 = fa.c_plain;
    z.b1 = fb.c_log;
    z.b2 = fb.c_plain;
    z.gamma0 = 0.57721566490153286061 - std::log(2.0);
    z.det_defect = std::abs(z.a1 * z.b2 - z.a2 * z.b1 - 1.0);
    z.fit_residual = std::max(fa.rel_residual, fb.rel_residual);
    z.resonant = std::abs(z.a1) <= 1e-3 * std::max(std::abs(z.a2), 1.0);
    return z;
}

} // namespace distwave
