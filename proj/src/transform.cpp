#include "distwave/transform.hpp"

#include <cmath>

#include "distwave/specfun.hpp"

namespace distwave {

namespace {

void check_x_grid(const SpectralTable& t, long n) {
    if (n != t.x.size()) throw GridMismatch("transform: function not on the table's x grid");
}

template <typename V>
void fill_stats(const SpectralTable& t, const V& f, TransformStats* stats) {
    if (!stats) return;
    double peak = 0, tail = 0;
    const long n = t.x.size();
    const long tail_start = n - std::max<long>(1, n / 20);
    for (long i = 0; i < n; ++i) {
        const double a = std::abs(f[i]);
        peak = std::max(peak, a);
        if (i >= tail_start) tail = std::max(tail, a);
    }
    stats->tail_magnitude = tail;
    stats->truncation_warning = tail > 1e-10 * std::max(peak, 1e-300);
}

} // namespace

Vec forward(const SpectralTable& t, const Vec& f, TransformStats* stats) {
    check_x_grid(t, f.size());
    fill_stats(t, f, stats);
    return t.phi.transpose() * (t.wx.array() * f.array()).matrix();
}

CVec forward(const SpectralTable& t, const CVec& f, TransformStats* stats) {
    check_x_grid(t, f.size());
    fill_stats(t, f, stats);
    return t.phi.transpose() * (t.wx.array() * f.array()).matrix();
}

Vec inverse(const SpectralTable& t, const Vec& g_hat) {
    if (g_hat.size() != t.xi.size()) throw GridMismatch("inverse: function not on the xi grid");
    return t.phi * (t.wxi.array() * t.rho_tilde.array() * g_hat.array()).matrix();
}

CVec inverse(const SpectralTable& t, const CVec& g_hat) {
    if (g_hat.size() != t.xi.size()) throw GridMismatch("inverse: function not on the xi grid");
    return t.phi * (t.wxi.array() * t.rho_tilde.array() * g_hat.array()).matrix();
}

double norm_x(const SpectralTable& t, const Vec& f) {
    check_x_grid(t, f.size());
    return std::sqrt((t.wx.array() * f.array().square()).sum());
}

double norm_x(const SpectralTable& t, const CVec& f) {
    check_x_grid(t, f.size());
    return std::sqrt((t.wx.array() * f.array().abs2()).sum());
}

double norm_rho(const SpectralTable& t, const Vec& g_hat) {
    return std::sqrt((t.wxi.array() * t.rho_tilde.array() * g_hat.array().square()).sum());
}

double norm_rho(const SpectralTable& t, const CVec& g_hat) {
    return std::sqrt((t.wxi.array() * t.rho_tilde.array() * g_hat.array().abs2()).sum());
}

double plancherel_defect(const SpectralTable& t, const Vec& f) {
    const double a = norm_rho(t, forward(t, f));
    const double b = norm_x(t, f);
    return std::abs(a * a - b * b);
}

DiagonalizationCheck apply_A_diag(const SpectralTable& t, const Potential& pot, const Vec& f) {
    check_x_grid(t, f.size());
    const double h = t.x[1] - t.x[0];
    // fourth-order one-sided estimate; the threshold carries an h^4 allowance
    // for the stencil's own truncation error on even data
    const double fp0 =
        (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h);
    const double scale = std::max(norm_x(t, f), 1e-300);
    if (std::abs(fp0) > 1e-8 * scale + 64.0 * h * h * h * h * f.cwiseAbs().maxCoeff())
        throw BoundaryViolation("apply_A_diag: f'(0) is not negligible");
    Vec fpp = second_derivative_uniform(t.x, f, true);
    Vec Af(f.size());
    for (long i = 0; i < f.size(); ++i) Af[i] = -fpp[i] + pot.eval(t.x[i]) * f[i];
    DiagonalizationCheck c;
    const Vec Ff = forward(t, f);
    c.lhs = forward(t, Af);
    c.rhs = (t.xi.array().square() * Ff.array()).matrix();
    c.discrepancy = norm_rho(t, Vec(c.lhs - c.rhs));
    c.weighted_scale =
        norm_rho(t, Vec(((1.0 + t.xi.array().square()) * Ff.array()).matrix()));
    return c;
}

double sobolev_norm_distorted(const SpectralTable& t, const Vec& f, double s) {
    return sobolev_norm_rho_side(t, forward(t, f), s);
}

double sobolev_norm_rho_side(const SpectralTable& t, const Vec& g_hat, double s) {
    Vec weighted =
        (g_hat.array() * (1.0 + t.xi.array().square()).pow(0.5 * s)).matrix();
    return norm_rho(t, weighted);
}

double sobolev_norm_rho_side(const SpectralTable& t, const CVec& g_hat, double s) {
    CVec weighted =
        (g_hat.array() * (1.0 + t.xi.array().square()).pow(0.5 * s)).matrix();
    return norm_rho(t, weighted);
}

double grid_sobolev_norm(const Vec& x, const Vec& f, int k, bool even_at_zero) {
    if (k < 0 || k > 2) throw DomainError("grid_sobolev_norm: k must be 0, 1 or 2");
    Vec w = simpson_weights(x);
    double acc = (w.array() * f.array().square()).sum();
    if (k >= 1) {
        Vec d = derivative_uniform(x, f, even_at_zero);
        acc += (w.array() * d.array().square()).sum();
        if (k >= 2) {
            Vec dd = second_derivative_uniform(x, f, even_at_zero);
            acc += (w.array() * dd.array().square()).sum();
        }
    }
    return std::sqrt(acc);
}

Vec hankel_transform(const Vec& x, const Vec& f) {
    if (x.size() != f.size()) throw GridMismatch("hankel_transform: size mismatch");
    Vec w = simpson_weights(x);
    Vec out(x.size());
    for (long j = 0; j < x.size(); ++j) {
        const double xi = x[j];
        double s = 0;
        if (xi > 0) {
            for (long i = 1; i < x.size(); ++i) {
                const double z = x[i] * xi;
                s += w[i] * std::sqrt(z) * bessel_j0(z) * f[i];
            }
        }
        out[j] = s;
    }
    return out;
}

} // namespace distwave
