#include "distwave/verify.hpp"

#include <cmath>

#include "distwave/vectorfield.hpp"

namespace distwave {

namespace {

double sinc(double z) { return std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z; }

// two-sided 97.5% Student quantiles for small samples, df = 1..30
double student_975(int df) {
    static const double q[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                               2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                               2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                               2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
    if (df < 1) return 12.706;
    if (df <= 30) return q[df - 1];
    return 1.96;
}

double finalize_ratio(EstimateReport& r) {
    double sup = 0;
    for (long i = 0; i < r.t_samples.size(); ++i)
        if (r.rhs[i] > 0) sup = std::max(sup, r.lhs[i] / r.rhs[i]);
    r.sup_ratio = sup;
    // trend of log(ratio) against log(t) over the top half of the samples
    std::vector<double> lt, lr;
    const double t_mid = r.t_samples[r.t_samples.size() / 2];
    for (long i = 0; i < r.t_samples.size(); ++i) {
        if (r.t_samples[i] < std::max(t_mid, 1e-12)) continue;
        if (r.lhs[i] <= 0 || r.rhs[i] <= 0) continue;
        lt.push_back(std::log(r.t_samples[i]));
        lr.push_back(std::log(r.lhs[i] / r.rhs[i]));
    }
    if (lt.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < lt.size(); ++i) {
            sx += lt[i];
            sy += lr[i];
            sxx += lt[i] * lt[i];
            sxy += lt[i] * lr[i];
        }
        const double n = double(lt.size());
        r.trend_slope = (n * sxy - sx * sy) / std::max(n * sxx - sx * sx, 1e-300);
    }
    return sup;
}

Vec japanese_pow(const Vec& x, double p) {
    return (1.0 + x.array().square()).pow(0.5 * p).matrix();
}

// derivative for odd grid functions: g(0) = 0, g(-h) = -g(h)
Vec derivative_uniform_odd(const Vec& x, const Vec& g) {
    Vec d = derivative_uniform(x, g, false);
    d[0] = g[1] / (x[1] - x[0]);
    return d;
}

} // namespace

std::string to_string(EstimateId id) {
    switch (id) {
        case EstimateId::dispersive_half: return "dispersive_half";
        case EstimateId::dispersive_one: return "dispersive_one";
        case EstimateId::energy: return "energy";
        case EstimateId::vector_field: return "vector_field";
        case EstimateId::local_energy_decay: return "local_energy_decay";
        case EstimateId::divergence_form: return "divergence_form";
    }
    return "unknown";
}

PowerFit fit_loglog(const Vec& t, const Vec& y, double t_lo) {
    std::vector<double> xs, ys;
    for (long i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || y[i] <= 0) continue;
        xs.push_back(std::log(t[i]));
        ys.push_back(std::log(y[i]));
    }
    PowerFit f;
    f.n = int(xs.size());
    if (f.n < 3) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < f.n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double n = double(f.n);
    const double sxx_c = sxx - sx * sx / n;
    f.slope = (sxy - sx * sy / n) / sxx_c;
    f.intercept = (sy - f.slope * sx) / n;
    double sse = 0;
    for (int i = 0; i < f.n; ++i) {
        const double e = ys[i] - (f.intercept + f.slope * xs[i]);
        sse += e * e;
    }
    const double se = std::sqrt(sse / std::max(n - 2.0, 1.0) / sxx_c);
    f.ci95 = student_975(f.n - 2) * se;
    return f;
}

EstimateReport verify_dispersive(const SpectralTable& table, const Vec& f, const Vec& g,
                                 double sigma, const Vec& t_grid, double fit_t_lo) {
    EstimateReport r;
    r.estimate_id = (sigma <= 0.75) ? EstimateId::dispersive_half : EstimateId::dispersive_one;
    r.t_samples = t_grid;
    r.lhs.resize(t_grid.size());
    r.rhs.resize(t_grid.size());

    const Vec wpos = japanese_pow(table.x, sigma);
    const Vec wneg = japanese_pow(table.x, -sigma);
    const Vec fp = derivative_uniform(table.x, f, true);
    auto l1 = [&](const Vec& v) { return (table.wx.array() * (wpos.array() * v.array()).abs()).sum(); };
    const double data_norm = l1(fp) + l1(f) + l1(g);

    const Vec Ff = forward(table, f), Fg = forward(table, g);
    for (long it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        WaveState s = propagate_hat(table, Ff, Fg, t);
        double sup = 0;
        for (long i = 0; i < table.x.size(); ++i)
            sup = std::max(sup, wneg[i] * std::abs(s.u[i]));
        r.lhs[it] = sup;
        r.rhs[it] = std::pow(1.0 + t * t, -0.5 * sigma) * data_norm;
    }
    finalize_ratio(r);
    PowerFit fit = fit_loglog(r.t_samples, r.lhs, fit_t_lo);
    if (fit.n >= 3) {
        r.fitted_exponent = fit.slope;
        r.exponent_ci95 = fit.ci95;
    }
    return r;
}

EstimateReport verify_energy(const SpectralTable& table, const Vec& f, const Vec& g, int k, int l,
                             const Vec& t_grid) {
    if (k < 0 || l < 0 || k + l > 3) throw DomainError("verify_energy: need k, l >= 0, k + l <= 3");
    check_nyquist(table, t_grid.maxCoeff());
    EstimateReport r;
    r.estimate_id = EstimateId::energy;
    r.t_samples = t_grid;
    r.lhs.resize(t_grid.size());
    r.rhs.resize(t_grid.size());

    const Vec Ff = forward(table, f), Fg = forward(table, g);
    const Vec wk = japanese_pow(table.xi, double(k));
    const Vec wkl = japanese_pow(table.xi, double(k + l));
    const double rhs1 = norm_rho(table, Vec((wkl.array() * table.xi.array() * Ff.array()).matrix()));
    const double rhs2 = norm_rho(table, Vec((wkl.array() * Fg.array()).matrix()));
    const double rhs = std::sqrt(rhs1 * rhs1 + rhs2 * rhs2);

    const double half_pi = 1.57079632679489662;
    for (long it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        Vec a(table.xi.size()), b(table.xi.size());
        for (long j = 0; j < table.xi.size(); ++j) {
            const double xi = table.xi[j];
            const double xl = std::pow(xi, double(l));
            // dt^l u and dt^{l+1} u on the transform side
            const double ul = xl * (std::cos(t * xi + l * half_pi) * Ff[j] +
                                    (l == 0 ? t * sinc(t * xi)
                                            : std::sin(t * xi + l * half_pi) / xi) * Fg[j]);
            const double ul1 = xl * xi * (std::cos(t * xi + (l + 1) * half_pi) * Ff[j] +
                                          std::sin(t * xi + (l + 1) * half_pi) / xi * Fg[j]);
            a[j] = wk[j] * xi * ul;
            b[j] = wk[j] * ul1;
        }
        const double la = norm_rho(table, a), lb = norm_rho(table, b);
        r.lhs[it] = std::sqrt(la * la + lb * lb);
        r.rhs[it] = rhs;
    }
    finalize_ratio(r);
    return r;
}

namespace {

// S^m u and its time derivative on the grid, built from transform-side time
// derivatives dt^j u (j <= m+1) via [dt, S] = dt.
struct ScaledStates {
    Vec sm;   // S^m u
    Vec sm_t; // dt S^m u
};

ScaledStates scaling_powers(const SpectralTable& table, const Vec& Ff, const Vec& Fg, double t,
                            int m) {
    const long n = table.xi.size();
    // dt^j u on the transform side, j = 0..m+1
    std::vector<Vec> du(m + 2);
    const double half_pi = 1.57079632679489662;
    for (int j = 0; j <= m + 1; ++j) {
        Vec hat(n);
        for (long q = 0; q < n; ++q) {
            const double xi = table.xi[q];
            const double xj = std::pow(xi, double(j));
            hat[q] = xj * (std::cos(t * xi + j * half_pi) * Ff[q] +
                           (j == 0 ? t * sinc(t * xi) : std::sin(t * xi + j * half_pi) / xi) *
                               Fg[q]);
        }
        du[j] = inverse(table, hat);
    }
    // recursion: s_{m} = t s_{m-1,t} + D s_{m-1}; s_{m,t} via the commutator
    std::vector<Vec> s(m + 1), st(m + 1), stt(m + 1);
    s[0] = du[0];
    st[0] = du[1];
    if (m >= 1) {
        if (int(du.size()) >= 3) stt[0] = du[2];
        s[1] = t * st[0] + apply_D(table.x, s[0]);
        st[1] = t * stt[0] + st[0] + apply_D(table.x, st[0]);
        if (m >= 2) {
            stt[1] = t * du[3] + 2.0 * stt[0] + apply_D(table.x, stt[0]);
            s[2] = t * st[1] + apply_D(table.x, s[1]);
            st[2] = t * stt[1] + st[1] + apply_D(table.x, st[1]);
        }
    }
    return {s[m], st[m]};
}

} // namespace

EstimateReport verify_vector_field(const SpectralTable& table, const Vec& f, const Vec& g, int m,
                                   int k, const Vec& t_grid) {
    if (m < 0 || m > 2) throw DomainError("verify_vector_field: m must be 0, 1 or 2");
    if (table.zero.resonant)
        throw ResonantPotential("verify_vector_field: resonant potential (hypothesis violated)");
    if (m == 0) {
        EstimateReport r = verify_energy(table, f, g, k, 0, t_grid);
        r.estimate_id = EstimateId::vector_field;
        return r;
    }

    check_nyquist(table, t_grid.maxCoeff());
    EstimateReport r;
    r.estimate_id = EstimateId::vector_field;
    r.t_samples = t_grid;
    r.lhs.resize(t_grid.size());
    r.rhs.resize(t_grid.size());

    const Vec Ff = forward(table, f), Fg = forward(table, g);
    const Vec wk = japanese_pow(table.xi, double(k));

    double rhs2 = 0;
    Vec dfj = f, dgj = g;
    for (int j = 0; j <= m; ++j) {
        if (j > 0) {
            dfj = apply_D(table.x, dfj);
            dgj = apply_D(table.x, dgj);
        }
        const Vec Fdf = forward(table, dfj), Fdg = forward(table, dgj);
        const double r1 =
            norm_rho(table, Vec((wk.array() * table.xi.array() * Fdf.array()).matrix()));
        const double r2 = norm_rho(table, Vec((wk.array() * Fdg.array()).matrix()));
        rhs2 += r1 * r1 + r2 * r2;
    }
    const double rhs = std::sqrt(rhs2);

    for (long it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        ScaledStates ss = scaling_powers(table, Ff, Fg, t, m);
        const Vec Fsm = forward(table, ss.sm);
        const Vec Fsmt = forward(table, ss.sm_t);
        const double l1 =
            norm_rho(table, Vec((wk.array() * table.xi.array() * Fsm.array()).matrix()));
        const double l2 = norm_rho(table, Vec((wk.array() * Fsmt.array()).matrix()));
        r.lhs[it] = std::sqrt(l1 * l1 + l2 * l2);
        r.rhs[it] = rhs;
    }
    finalize_ratio(r);
    return r;
}

EstimateReport verify_local_energy_decay(const SpectralTable& table, const Vec& f, int m, int k,
                                         int l, const Vec& T_checkpoints, double dt, double eps,
                                         bool sine_variant) {
    if (m < 0 || m > 1) throw DomainError("verify_local_energy_decay: m must be 0 or 1");
    if (k < 0 || k > 2) throw DomainError("verify_local_energy_decay: k must be <= 2");
    check_nyquist(table, T_checkpoints.maxCoeff());
    EstimateReport r;
    r.estimate_id = EstimateId::local_energy_decay;
    r.t_samples = T_checkpoints;
    r.lhs.resize(T_checkpoints.size());
    r.rhs.resize(T_checkpoints.size());

    const Vec Ff = forward(table, f);
    const Vec weight = sine_variant ? japanese_pow(table.x, -1.0)
                                    : japanese_pow(table.x, -0.5 - eps);

    // rhs: sum_j ||D^j data|| in the variant's norm
    double rhs = 0;
    {
        Vec dj = f;
        for (int j = 0; j <= m; ++j) {
            if (j > 0) dj = apply_D(table.x, dj);
            if (sine_variant) {
                const Vec wdata = (japanese_pow(table.x, 0.5 + eps).array() * dj.array()).matrix();
                rhs += norm_x(table, wdata);
            } else {
                rhs += sobolev_norm_distorted(table, dj, double(k + l));
            }
        }
    }

    const double T_max = T_checkpoints[T_checkpoints.size() - 1];
    const long steps = std::lround(std::ceil(T_max / dt));
    const double h = T_max / double(steps);

    double cum = 0;
    size_t next_cp = 0;
    double prev_val = 0;
    for (long q = 0; q <= steps; ++q) {
        const double t = h * double(q);
        // transform-side state and its time derivative
        CVec hat(table.xi.size()), hat_t(table.xi.size());
        for (long j = 0; j < table.xi.size(); ++j) {
            const double xi = table.xi[j];
            std::complex<double> base, base_t;
            if (sine_variant) {
                base = t * sinc(t * xi);
                base_t = std::cos(t * xi);
            } else {
                base = std::exp(std::complex<double>(0, t * xi));
                base_t = std::complex<double>(0, xi) * base;
            }
            const std::complex<double> il = std::pow(std::complex<double>(0, xi), double(l));
            hat[j] = il * base * Ff[j];
            hat_t[j] = il * base_t * Ff[j];
        }
        CVec u = inverse(table, hat);
        if (m == 1) {
            CVec ut = inverse(table, hat_t);
            // S u = t u_t + x u_x
            Vec re = u.real(), im = u.imag();
            Vec sre = t * ut.real() + apply_D(table.x, re);
            Vec sim = t * ut.imag() + apply_D(table.x, im);
            for (long i = 0; i < u.size(); ++i) u[i] = std::complex<double>(sre[i], sim[i]);
        }
        Vec wre = (weight.array() * u.real().array()).matrix();
        Vec wim = (weight.array() * u.imag().array()).matrix();
        const double nre = grid_sobolev_norm(table.x, wre, k, false);
        const double nim = grid_sobolev_norm(table.x, wim, k, false);
        const double val = nre * nre + nim * nim;
        if (q > 0) cum += 0.5 * h * (prev_val + val);
        prev_val = val;
        while (next_cp < size_t(T_checkpoints.size()) &&
               t >= T_checkpoints[long(next_cp)] - 0.5 * h) {
            r.lhs[long(next_cp)] = std::sqrt(cum);
            r.rhs[long(next_cp)] = rhs;
            ++next_cp;
        }
    }
    while (next_cp < size_t(T_checkpoints.size())) {
        r.lhs[long(next_cp)] = std::sqrt(cum);
        r.rhs[long(next_cp)] = rhs;
        ++next_cp;
    }
    finalize_ratio(r);
    return r;
}

EstimateReport verify_divergence_form(const SpectralTable& table, const Vec& g_odd, int k, int l,
                                      const Vec& t_grid) {
    if (table.zero.resonant)
        throw ResonantPotential("verify_divergence_form: resonant potential");
    if (k < 0 || k > 1 || l < 0 || l > 1)
        throw DomainError("verify_divergence_form: grid-resolvable orders are k, l <= 1");
    check_nyquist(table, t_grid.maxCoeff());
    EstimateReport r;
    r.estimate_id = EstimateId::divergence_form;
    r.t_samples = t_grid;
    r.lhs.resize(t_grid.size());
    r.rhs.resize(t_grid.size());

    const Vec gp = derivative_uniform_odd(table.x, g_odd); // even data
    const Vec Fgp = forward(table, gp);

    // rhs: H^{1+k+l} grid norm of g
    const double rhs = grid_sobolev_norm(table.x, g_odd, 1 + k + l, false);

    const double half_pi = 1.57079632679489662;
    for (long it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        Vec hat(table.xi.size());
        for (long j = 0; j < table.xi.size(); ++j) {
            const double xi = table.xi[j];
            hat[j] = (l == 0 ? t * sinc(t * xi) : std::sin(t * xi + l * half_pi) * std::pow(xi, l - 1)) *
                     Fgp[j];
        }
        const Vec u = inverse(table, hat);           // even
        const Vec du = derivative_uniform(table.x, u, true); // odd
        r.lhs[it] = grid_sobolev_norm(table.x, du, k, false);
        r.rhs[it] = rhs;
    }
    finalize_ratio(r);
    return r;
}

} // namespace distwave
