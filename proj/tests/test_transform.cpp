#include <doctest.h>

#include <cmath>

#include "distwave/transform.hpp"

using namespace distwave;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpectralTable make_table(const Potential& pot, double x_max = 24.0, double dx = 0.02,
                         double xi_max = 12.0, double dxi = 0.02) {
    SpectralGridSpec spec;
    spec.x_max = x_max;
    spec.dx = dx;
    spec.xi_min = 1e-4;
    spec.xi_max = xi_max;
    spec.dxi_linear = dxi;
    return build_spectral_table(pot, spec);
}

Vec sample(const Vec& x, const std::function<double(double)>& f) {
    Vec v(x.size());
    for (long i = 0; i < x.size(); ++i) v[i] = f(x[i]);
    return v;
}

const std::vector<std::function<double(double)>>& schwartz_suite() {
    static const std::vector<std::function<double(double)>> suite = {
        [](double x) { return std::exp(-0.5 * x * x); },
        [](double x) { return std::exp(-x * x / 8.0); },
        [](double x) { return x * x * std::exp(-0.5 * x * x); },
        [](double x) { return std::cos(2.0 * x) * std::exp(-0.5 * x * x); },
        [](double x) { return std::exp(-0.5 * (x - 3) * (x - 3)) + std::exp(-0.5 * (x + 3) * (x + 3)); },
        [](double x) { return 1.0 / std::cosh(x); },
        [](double x) { double s = 1.0 / std::cosh(0.5 * x); return s * s; },
        [](double x) { return std::cos(x) * std::exp(-0.25 * x * x); },
        [](double x) { return (1.0 + x * x) * std::exp(-x * x / 3.0); },
        [](double x) { return std::exp(-x * x / 12.0); },
    };
    return suite;
}

} // namespace

TEST_CASE("free transform of a Gaussian is the negated Gaussian cosine transform") {
    auto zero = make_zero_potential();
    auto t = make_table(zero);
    Vec f = sample(t.x, [](double x) { return std::exp(-0.5 * x * x); });
    Vec Ff = forward(t, f);
    double err = 0;
    for (long j = 0; j < t.xi.size(); ++j) {
        const double want = -std::sqrt(kPi / 2.0) * std::exp(-0.5 * t.xi[j] * t.xi[j]);
        err = std::max(err, std::abs(Ff[j] - want));
    }
    CHECK(err < 1e-8);

    Vec zero_in = Vec::Zero(t.x.size());
    CHECK(forward(t, zero_in).norm() == 0.0);
}

TEST_CASE("plancherel and round trip over the bundled suite") {
    auto zero = make_zero_potential();
    auto model = make_model_potential();
    for (const auto* pot : {&zero, &model}) {
        auto t = make_table(*pot);
        for (const auto& fn : schwartz_suite()) {
            Vec f = sample(t.x, fn);
            const double n2 = std::pow(norm_x(t, f), 2);
            CHECK(plancherel_defect(t, f) < 1e-3 * n2);
            Vec back = inverse(t, forward(t, f));
            CHECK(norm_x(t, Vec(back - f)) < 1e-3 * norm_x(t, f));
        }
    }
}

TEST_CASE("linearity to roundoff") {
    auto model = make_model_potential();
    auto t = make_table(model, 16.0, 0.04, 6.0, 0.05);
    Vec f = sample(t.x, schwartz_suite()[0]);
    Vec g = sample(t.x, schwartz_suite()[2]);
    Vec lhs = forward(t, Vec(2.5 * f - 0.7 * g));
    Vec rhs = 2.5 * forward(t, f) - 0.7 * forward(t, g);
    CHECK((lhs - rhs).norm() < 1e-12 * (rhs.norm() + 1.0));
}

TEST_CASE("diagonalization: F(Af) = xi^2 F f") {
    auto model = make_model_potential();
    auto t = make_table(model);
    for (size_t k : {0, 2, 8}) {
        Vec f = sample(t.x, schwartz_suite()[k]);
        auto c = apply_A_diag(t, model, f);
        CHECK(c.discrepancy < 1e-3 * c.weighted_scale);
    }
    // free case with the closed-form second derivative
    auto zero = make_zero_potential();
    auto tz = make_table(zero);
    Vec f = sample(tz.x, [](double x) { return std::exp(-0.5 * x * x); });
    auto c = apply_A_diag(tz, zero, f);
    CHECK(c.discrepancy < 1e-3 * c.weighted_scale);

    // boundary guard
    Vec bad = sample(t.x, [](double x) { return std::exp(-x); });
    CHECK_THROWS_AS(apply_A_diag(t, model, bad), BoundaryViolation);

    // band-limited reconstruction: an eigen-relation by construction, the
    // discrepancy sits at quadrature level
    Vec bump(t.xi.size());
    for (long j = 0; j < t.xi.size(); ++j) {
        const double z = (t.xi[j] - 1.5) / 0.3;
        bump[j] = std::exp(-0.5 * z * z);
    }
    Vec fb = inverse(t, bump);
    auto cb = apply_A_diag(t, model, fb);
    CHECK(cb.discrepancy < 1e-3 * cb.weighted_scale);
}

TEST_CASE("grid mismatch guards") {
    auto model = make_model_potential();
    auto t = make_table(model, 16.0, 0.04, 6.0, 0.05);
    Vec wrong = Vec::Zero(t.x.size() + 3);
    CHECK_THROWS_AS(forward(t, wrong), GridMismatch);
    CHECK_THROWS_AS(inverse(t, wrong), GridMismatch);
}

TEST_CASE("distorted Sobolev norm brackets the grid H^2 norm") {
    auto model = make_model_potential();
    auto t = make_table(model);
    // s = 0 equals the plain norm
    Vec f0 = sample(t.x, schwartz_suite()[0]);
    CHECK(sobolev_norm_distorted(t, f0, 0.0) ==
          doctest::Approx(norm_rho(t, forward(t, f0))).epsilon(1e-14));

    double cmax = 0, cmin = 1e300;
    for (const auto& fn : schwartz_suite()) {
        Vec f = sample(t.x, fn);
        const double ratio = sobolev_norm_distorted(t, f, 2.0) / grid_sobolev_norm(t.x, f, 2, true);
        cmax = std::max(cmax, ratio);
        cmin = std::min(cmin, ratio);
    }
    CHECK(cmax / cmin < 25.0); // both constants below 5
    CHECK(cmax < 5.0);
    CHECK(cmin > 0.2);

    // equivalence-constant stability under dilation
    for (double a : {0.5, 1.0, 2.0}) {
        Vec f = sample(t.x, [a](double x) { return std::exp(-0.5 * a * x * a * x); });
        const double r = sobolev_norm_distorted(t, f, 2.0) / grid_sobolev_norm(t.x, f, 2, true);
        CHECK(r < 5.0);
        CHECK(r > 0.2);
    }
}

TEST_CASE("parity: transforms of even data are real by construction") {
    // phi and the weights are real, so F maps real to real; check the
    // composition against a complexified copy
    auto model = make_model_potential();
    auto t = make_table(model, 16.0, 0.04, 6.0, 0.05);
    Vec f = sample(t.x, schwartz_suite()[3]);
    CVec fc = f.cast<std::complex<double>>();
    CVec Fc = forward(t, fc);
    double im = 0;
    for (long j = 0; j < Fc.size(); ++j) im = std::max(im, std::abs(Fc[j].imag()));
    CHECK(im == 0.0);
}

TEST_CASE("hankel transform: fixed point and self-inversion") {
    Vec x = uniform_grid(24.0, 0.01);
    Vec f(x.size());
    for (long i = 0; i < x.size(); ++i) f[i] = std::sqrt(x[i]) * std::exp(-0.5 * x[i] * x[i]);
    Vec F = hankel_transform(x, f);
    Vec w = simpson_weights(x);
    const double l2 = std::sqrt((w.array() * f.array().square()).sum());
    const double fixed_err = std::sqrt((w.array() * (F - f).array().square()).sum());
    CHECK(fixed_err < 1e-3 * l2);

    // double application returns the input
    Vec g(x.size());
    for (long i = 0; i < x.size(); ++i) g[i] = std::sqrt(x[i]) * std::exp(-x[i] * x[i] / 3.0);
    Vec gg = hankel_transform(x, hankel_transform(x, g));
    const double gl2 = std::sqrt((w.array() * g.array().square()).sum());
    CHECK(std::sqrt((w.array() * (gg - g).array().square()).sum()) < 1e-3 * gl2);

    Vec z = Vec::Zero(x.size());
    CHECK(hankel_transform(x, z).norm() == 0.0);
}

TEST_CASE("truncation warning for slowly decaying data") {
    auto zero = make_zero_potential();
    auto t = make_table(zero, 16.0, 0.04, 6.0, 0.05);
    TransformStats stats;
    Vec slow = sample(t.x, [](double x) { return 1.0 / (1.0 + x * x); });
    forward(t, slow, &stats);
    CHECK(stats.truncation_warning);
    Vec fast = sample(t.x, [](double x) { return std::exp(-x * x); });
    forward(t, fast, &stats);
    CHECK_FALSE(stats.truncation_warning);
}
