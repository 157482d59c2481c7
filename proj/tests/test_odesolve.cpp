#include <doctest.h>

#include <cmath>
#include <complex>

#include "distwave/errors.hpp"
#include "distwave/odesolve.hpp"
#include "distwave/potential.hpp"

using namespace distwave;

TEST_CASE("free regular solutions are trigonometric") {
    auto zero = make_zero_potential();
    const double xi = 1.0;
    Vec x = uniform_grid(50.0, 0.05);
    auto s = solve_regular(zero, xi * xi, x);
    double e_phi = 0, e_theta = 0;
    for (long i = 0; i < x.size(); ++i) {
        e_phi = std::max(e_phi, std::abs(s.phi[i] + std::cos(x[i] * xi)));
        e_theta = std::max(e_theta, std::abs(s.theta[i] - std::sin(x[i] * xi) / xi));
    }
    CHECK(e_phi < 1e-8);
    CHECK(e_theta < 1e-8);
}

TEST_CASE("regular Wronskian is identically one") {
    auto model = make_model_potential();
    for (double lambda : {0.0, 0.3, 4.0, 50.0}) {
        Vec x = uniform_grid(40.0, 0.05);
        auto s = solve_regular(model, lambda, x);
        Vec w = wronskian_regular(s);
        CHECK(std::abs(w.maxCoeff() - 1.0) < 1e-7);
        CHECK(std::abs(w.minCoeff() - 1.0) < 1e-7);
    }
}

TEST_CASE("grid refinement changes endpoints within tolerance budget") {
    auto model = make_model_potential();
    Ode2Options loose;
    loose.rtol = 1e-8;
    Ode2Options tight;
    tight.rtol = 5e-9;
    Vec x = uniform_grid(30.0, 0.1);
    auto a = solve_regular(model, 2.0, x, loose);
    auto b = solve_regular(model, 2.0, x, tight);
    const long n = x.size() - 1;
    CHECK(std::abs(a.phi[n] - b.phi[n]) < 1e-7 * std::max(1.0, std::abs(b.phi[n])));
}

TEST_CASE("free Jost solution is a plane wave") {
    auto zero = make_zero_potential();
    const double xi = 2.0;
    Vec x = uniform_grid(20.0, 0.05);
    auto j = solve_jost(zero, xi, x);
    CHECK(j.seed_kind == SeedKind::plane_wave);
    double err = 0;
    for (long i = 0; i < x.size(); ++i) {
        const std::complex<double> want(std::cos(xi * x[i]), std::sin(xi * x[i]));
        err = std::max(err, std::abs(j.f[i] - want));
    }
    CHECK(err < 1e-8);
}

TEST_CASE("Jost conjugate Wronskian equals -2i xi uniformly") {
    auto model = make_model_potential();
    const double xi = 0.3;
    Vec x = log_grid(0.5, 30.0, 60);
    auto j = solve_jost(model, xi, x);
    CHECK(j.seed_kind == SeedKind::hankel);
    CVec w = wronskian_jost_conj(j);
    const std::complex<double> want(0.0, -2.0 * xi);
    for (long i = 0; i < w.size(); ++i) CHECK(std::abs(w[i] - want) < 1e-6);
}

TEST_CASE("seeding stability: doubling X0 moves f_+(1, xi) by < 1e-4 relative") {
    auto model = make_model_potential();
    const double xi = 0.05;
    Vec x(1);
    x << 1.0;
    JostOptions o1, o2;
    o2.X0 = 2 * o1.X0; // X* = c/xi dominates here; also double c
    o2.c = 2 * o1.c;
    auto a = solve_jost(model, xi, x, o1);
    auto b = solve_jost(model, xi, x, o2);
    CHECK(std::abs(a.f[0] - b.f[0]) < 1e-4 * std::abs(b.f[0]));
}

TEST_CASE("hankel and plane-wave seeds agree at overlap frequencies") {
    auto model = make_model_potential();
    Vec x = uniform_grid(10.0, 0.5);
    for (double xi : {0.4, 0.5, 0.6}) {
        JostOptions oh, op;
        oh.force_seed = true;
        oh.forced = SeedKind::hankel;
        op.force_seed = true;
        op.forced = SeedKind::plane_wave;
        // the plane-wave seed truncates the tail; push it far out so its own
        // truncation error sits below the agreement tolerance
        op.X0 = 5000.0;
        auto a = solve_jost(model, xi, x, oh);
        auto b = solve_jost(model, xi, x, op);
        double rel = 0;
        for (long i = 0; i < x.size(); ++i)
            rel = std::max(rel, std::abs(a.f[i] - b.f[i]) / std::abs(b.f[i]));
        CHECK(rel < 1e-4);
    }
}

TEST_CASE("SeedOutOfRange for too-small xi") {
    auto model = make_model_potential();
    JostOptions o;
    o.x_star_max = 1000.0;
    Vec x(1);
    x << 1.0;
    CHECK_THROWS_AS(solve_jost(model, 1e-5, x, o), SeedOutOfRange);
}

TEST_CASE("zero-energy tail fit recovers synthetic coefficients exactly") {
    RegularSolution s;
    s.lambda = 0.0;
    s.x = log_grid(10.0, 1e4, 200);
    s.phi.resize(s.x.size());
    s.theta.resize(s.x.size());
    s.dphi = Vec::Zero(s.x.size());
    s.dtheta = Vec::Zero(s.x.size());
    for (long i = 0; i < s.x.size(); ++i) {
        const double t = s.x[i];
        s.phi[i] = 2.0 * std::sqrt(t) * std::log(t) + 3.0 * std::sqrt(t);
        s.theta[i] = 0.5 * std::sqrt(t) * std::log(t) - 1.0 * std::sqrt(t);
    }
    auto z = fit_zero_energy_coeffs(s, 10.0, 1e4);
    CHECK(z.a1 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(z.a2 == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(z.b1 == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_FALSE(z.resonant);
}

TEST_CASE("smoothed inverse-square tail: determinant identity") {
    auto tail = make_smoothed_inverse_square();
    Vec x = zero_energy_grid(1e6);
    auto s = solve_regular(tail, 0.0, x);
    auto z = fit_zero_energy_coeffs(s, 1e4, 1e6);
    CHECK(z.det_defect < 1e-3);
}

TEST_CASE("model potential zero-energy coefficients: Richardson agreement") {
    auto model = make_model_potential();
    Vec x = zero_energy_grid(1e7);
    Ode2Options tight;
    tight.rtol = 1e-11;
    auto s1 = solve_regular(model, 0.0, x, Ode2Options{});
    auto s2 = solve_regular(model, 0.0, x, tight);
    auto z1 = fit_zero_energy_coeffs(s1, 1e6, 1e7);
    auto z2 = fit_zero_energy_coeffs(s2, 1e6, 1e7);
    CHECK(z1.a1 == doctest::Approx(z2.a1).epsilon(1e-3));
    CHECK(z1.a2 == doctest::Approx(z2.a2).epsilon(1e-3));
    CHECK(z1.det_defect < 1e-3);
    // generic nonresonance of the bundled potential
    CHECK(std::abs(z1.a1) > 1e-3);
    CHECK_FALSE(z1.resonant);
}
