#include "distwave/vectorfield.hpp"

#include <cmath>

namespace distwave {

namespace {
constexpr double kPi = 3.14159265358979323846;

double sinc(double z) { return std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z; }
} // namespace

Vec apply_D(const Vec& grid, const Vec& f) {
    Vec d = derivative_nonuniform(grid, f);
    return (grid.array() * d.array()).matrix();
}

Vec apply_B(const SpectralTable& t, const Vec& g_hat) {
    if (g_hat.size() != t.xi.size()) throw GridMismatch("apply_B: not on the xi grid");
    const Vec f = inverse(t, g_hat);
    return forward(t, apply_D(t.x, f)) + apply_D(t.xi, g_hat) + g_hat;
}

Vec apply_E(const SpectralTable& t, const Vec& f) { return inverse(t, apply_B(t, forward(t, f))); }

BKernel kernel_F(const SpectralTable& t, const Potential& pot) {
    BKernel k;
    k.xi = t.xi;
    k.U.resize(t.x.size());
    for (long i = 0; i < t.x.size(); ++i) k.U[i] = eval_U(pot, t.x[i]);
    const Vec wU = (t.wx.array() * k.U.array()).matrix();
    k.F = t.phi.transpose() * wU.asDiagonal() * t.phi;
    k.eta_rho = (t.xi.array() * t.rho.array()).matrix();
    return k;
}

double offdiag_identity_residual(const SpectralTable& t, const BKernel& k, const Vec& f_hat) {
    const Vec xi2 = t.xi.array().square().matrix();
    const Vec b = apply_B(t, f_hat);
    const Vec lhs = (xi2.array() * b.array()).matrix() -
                    apply_B(t, Vec((xi2.array() * f_hat.array()).matrix()));
    const Vec rhs = 2.0 * (k.F * (t.wxi.array() * k.eta_rho.array() * f_hat.array()).matrix());
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

Vec pv_apply(const Vec& xi, const Vec& wxi, const Vec& eta_rho, const Mat& F, const Vec& f,
             double delta_steps) {
    if (delta_steps > 8.0)
        throw ExclusionTooWide("pv_apply: exclusion exceeds 8 local grid spacings");
    // node-count semantics avoid borderline comparisons: steps = 2 drops the
    // center and one neighbor on each side
    const long excl = std::max<long>(1, std::lround(delta_steps));
    const long n = xi.size();
    Vec out = Vec::Zero(n);
    for (long i = 0; i < n; ++i) {
        const double local =
            (i == 0) ? xi[1] - xi[0]
                     : (i + 1 == n ? xi[n - 1] - xi[n - 2] : 0.5 * (xi[i + 1] - xi[i - 1]));
        const double delta = (double(excl) - 0.5) * local; // removed measure half-width
        double acc = 0;
        for (long j = 0; j < n; ++j) {
            if (std::abs(j - i) < excl) continue;
            acc += 2.0 * wxi[j] * F(i, j) * eta_rho[j] * f[j] /
                   (xi[i] * xi[i] - xi[j] * xi[j]);
        }
        // first-order Taylor correction of the excluded band: the odd part of
        // the integrand cancels, leaving -2 delta d/deta [G(xi,eta) f(eta)]
        // at eta = xi with G = 2 F eta rho / (xi + eta)
        if (i > 0 && i + 1 < n) {
            Vec g(3);
            Vec e(3);
            for (int s = -1; s <= 1; ++s) {
                const long j = i + s;
                e[s + 1] = xi[j];
                g[s + 1] = 2.0 * F(i, j) * eta_rho[j] * f[j] / (xi[i] + xi[j]);
            }
            const double h1 = e[1] - e[0], h2 = e[2] - e[1];
            const double dg = -h2 / (h1 * (h1 + h2)) * g[0] + (h2 - h1) / (h1 * h2) * g[1] +
                              h1 / (h2 * (h1 + h2)) * g[2];
            acc += -2.0 * delta * dg;
        }
        out[i] = acc;
    }
    return out;
}

Vec singular_B0(const SpectralTable& t, const BKernel& k, const Vec& f_hat,
                double exclusion_half_width) {
    if (f_hat.size() != t.xi.size()) throw GridMismatch("singular_B0: not on the xi grid");
    return pv_apply(t.xi, t.wxi, k.eta_rho, k.F, f_hat,
                    exclusion_half_width / t.dxi_linear);
}

DiagonalComparison diagonal_multiplier(const SpectralTable& t, const Vec& xi_probe,
                                       double bump_width) {
    DiagonalComparison c;
    c.xi_probe = xi_probe;
    c.h_formula.resize(xi_probe.size());
    c.h_narrowband.resize(xi_probe.size());

    // a'(xi) by nonuniform centered differences of the stored coefficient
    Vec are(t.xi.size()), aim(t.xi.size());
    for (long j = 0; j < t.xi.size(); ++j) {
        are[j] = t.a[j].real();
        aim[j] = t.a[j].imag();
    }
    const Vec dre = derivative_nonuniform(t.xi, are);
    const Vec dim = derivative_nonuniform(t.xi, aim);

    for (long p = 0; p < xi_probe.size(); ++p) {
        const double x0 = xi_probe[p];
        long j0 = 0;
        for (long j = 1; j < t.xi.size(); ++j)
            if (std::abs(t.xi[j] - x0) < std::abs(t.xi[j0] - x0)) j0 = j;
        const std::complex<double> ap(dre[j0], dim[j0]);
        c.h_formula[p] =
            2.0 * kPi * t.xi[j0] * t.xi[j0] * t.rho[j0] * std::real(ap * std::conj(t.a[j0]));

        Vec bump(t.xi.size());
        for (long j = 0; j < t.xi.size(); ++j) {
            const double z = (t.xi[j] - t.xi[j0]) / bump_width;
            bump[j] = std::exp(-0.5 * z * z);
        }
        const Vec Bb = apply_B(t, bump);
        c.h_narrowband[p] = Bb[j0]; // bump value at the center is 1
        c.max_disagreement =
            std::max(c.max_disagreement, std::abs(c.h_formula[p] - c.h_narrowband[p]));
    }
    return c;
}

double commutator_S_cos_residual(const SpectralTable& t, const Vec& f, double time) {
    check_nyquist(t, time);
    const Vec Ff = forward(t, f);
    Vec cos_hat(t.xi.size()), tdt_hat(t.xi.size());
    for (long j = 0; j < t.xi.size(); ++j) {
        const double xi = t.xi[j];
        cos_hat[j] = std::cos(time * xi) * Ff[j];
        tdt_hat[j] = -time * xi * std::sin(time * xi) * Ff[j];
    }
    const Vec u = inverse(t, cos_hat);
    const Vec Su = inverse(t, tdt_hat) + apply_D(t.x, u);

    const Vec Df = apply_D(t.x, f);
    const Vec FDf = forward(t, Df);
    Vec rhs_hat(t.xi.size());
    const Vec B_cos = apply_B(t, cos_hat);       // B F[cos(t sqrt A) f]
    const Vec BFf = apply_B(t, Ff);
    for (long j = 0; j < t.xi.size(); ++j) {
        const double cj = std::cos(time * t.xi[j]);
        rhs_hat[j] = cj * FDf[j] + B_cos[j] - cj * BFf[j];
    }
    const Vec rhs = inverse(t, rhs_hat);
    return norm_x(t, Vec(Su - rhs));
}

double commutator_S_sin_residual(const SpectralTable& t, const Vec& g, double time) {
    check_nyquist(t, time);
    const Vec Fg = forward(t, g);
    Vec sin_hat(t.xi.size()), tdt_hat(t.xi.size());
    for (long j = 0; j < t.xi.size(); ++j) {
        const double xi = t.xi[j];
        sin_hat[j] = time * sinc(time * xi) * Fg[j];
        tdt_hat[j] = time * std::cos(time * xi) * Fg[j];
    }
    const Vec u = inverse(t, sin_hat);
    const Vec Su = inverse(t, tdt_hat) + apply_D(t.x, u);

    const Vec forcing = apply_D(t.x, g) + g;
    const Vec Ffor = forward(t, forcing);
    Vec rhs_hat(t.xi.size());
    const Vec B_sin = apply_B(t, sin_hat);
    const Vec BFg = apply_B(t, Fg);
    for (long j = 0; j < t.xi.size(); ++j) {
        const double sj = time * sinc(time * t.xi[j]);
        rhs_hat[j] = sj * Ffor[j] + B_sin[j] - sj * BFg[j];
    }
    const Vec rhs = inverse(t, rhs_hat);
    return norm_x(t, Vec(Su - rhs));
}

Vec iterated_commutator_adDB(const SpectralTable& t, int m, const Vec& f_hat) {
    if (m < 1 || m > 2) throw DomainError("iterated_commutator_adDB: m must be 1 or 2");
    auto ad1 = [&](const Vec& g) {
        return Vec(apply_D(t.xi, apply_B(t, g)) - apply_B(t, apply_D(t.xi, g)));
    };
    if (m == 1) return ad1(f_hat);
    return Vec(apply_D(t.xi, ad1(f_hat)) - ad1(apply_D(t.xi, f_hat)));
}

double duhamel_S_commutation_residual(const SpectralTable& t,
                                      const std::function<Vec(double)>& src,
                                      const std::function<Vec(double)>& dsrc_ds, double time,
                                      int n_s) {
    check_nyquist(t, time);
    if (n_s % 2 != 0) ++n_s;
    const long n = t.xi.size();
    const double h = time / double(n_s);

    Vec u_hat = Vec::Zero(n), ut_hat = Vec::Zero(n);
    Vec rhs1_hat = Vec::Zero(n); // sine propagator applied to s d_s src + D src
    Vec ebr_hat = Vec::Zero(n);  // commutator bracket accumulated in s
    for (int kq = 0; kq <= n_s; ++kq) {
        const double s = h * double(kq);
        const double w =
            (kq == 0 || kq == n_s) ? h / 3.0 : (kq % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
        const Vec hat = forward(t, src(s));
        const Vec shat = forward(t, Vec(s * dsrc_ds(s) + apply_D(t.x, src(s))));
        Vec sin_hat(n);
        for (long j = 0; j < n; ++j) {
            const double tau = time - s;
            sin_hat[j] = tau * sinc(tau * t.xi[j]) * hat[j];
            u_hat[j] += w * sin_hat[j];
            ut_hat[j] += w * std::cos(tau * t.xi[j]) * hat[j];
            rhs1_hat[j] += w * tau * sinc(tau * t.xi[j]) * shat[j];
        }
        const Vec Bsin = apply_B(t, sin_hat);
        const Vec Bhat = apply_B(t, hat);
        for (long j = 0; j < n; ++j) {
            const double tau = time - s;
            ebr_hat[j] += w * (Bsin[j] - tau * sinc(tau * t.xi[j]) * Bhat[j]);
        }
    }
    const Vec u = inverse(t, u_hat);
    const Vec Su = time * inverse(t, ut_hat) + apply_D(t.x, u);
    const Vec rhs = inverse(t, Vec(rhs1_hat + ebr_hat)) + 2.0 * u;
    const double denom = std::max(norm_x(t, Su), 1e-300);
    return norm_x(t, Vec(Su - rhs)) / denom;
}

} // namespace distwave
