#include <doctest.h>

#include <cmath>

#include "distwave/errors.hpp"
#include "distwave/potential.hpp"

using namespace distwave;

namespace {

// High-order central-difference oracle for first/second derivatives.
double fd1(const std::function<double(double)>& f, double x, double h = 1e-4) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}
double fd2(const std::function<double(double)>& f, double x, double h = 1e-4) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) /
           (12 * h * h);
}

// Tridiagonal Sturm-sequence count of eigenvalues below E for the Neumann
// half-line finite-difference matrix. Independent of the shooting path.
int sturm_count_below(const Potential& pot, double E, double L, double h) {
    const long n = long(L / h);
    // Neumann at 0 via ghost point: row 0 diag = 2/h^2 ... with f(-1)=f(1):
    // (2 f0 - 2 f1)/h^2 + V f0. Dirichlet truncation at L.
    // Sturm sequence with the sub/super-diagonal product (the matrix is
    // similar to a symmetric one, so the count is exact).
    double d_prev = 0.0;
    int count = 0;
    const double ih2 = 1.0 / (h * h);
    for (long i = 0; i < n; ++i) {
        const double diag = 2.0 * ih2 + pot.eval(double(i) * h) - E;
        const double off2 = (i == 0) ? 0.0 : ((i == 1) ? 2.0 * ih2 * ih2 : ih2 * ih2);
        const double d = (i == 0) ? diag : diag - off2 / d_prev;
        if (d < 0) ++count;
        d_prev = d;
    }
    return count;
}

} // namespace

TEST_CASE("eval_U closed forms") {
    auto zero = make_zero_potential();
    CHECK(eval_U(zero, 3.0) == 0.0);

    // the pure inverse-square tail cancels exactly
    auto tail = make_smoothed_inverse_square();
    CHECK(std::abs(eval_U(tail, 2.0)) < 1e-15);
    CHECK(std::abs(-2.0 * tail.eval(2.0) - 2.0 * tail.deriv(2.0) -
                   (-2.0 * (-1.0 / 16.0) - 2.0 * (1.0 / 16.0))) < 1e-15);

    // model potential at x = 1, against the derivative oracle; closed form
    // U = x^2 (11 x^2 - 16) / (2 (1+x^2)^4) gives -5/32 there
    auto model = make_model_potential();
    const double u_direct = -2.0 * model.eval(1.0) - 1.0 * fd1(model.eval, 1.0);
    CHECK(eval_U(model, 1.0) == doctest::Approx(u_direct).epsilon(1e-10));
    CHECK(eval_U(model, 1.0) == doctest::Approx(-5.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("analytic derivatives match finite-difference oracle") {
    auto model = make_model_potential();
    auto tail = make_smoothed_inverse_square();
    auto pt = make_poschl_teller();
    for (double x : {0.3, 0.75, 1.2, 2.5, 7.0}) {
        CHECK(model.deriv(x) == doctest::Approx(fd1(model.eval, x)).epsilon(1e-8));
        CHECK(model.deriv2(x) == doctest::Approx(fd2(model.eval, x)).epsilon(1e-6));
        CHECK(tail.deriv(x) == doctest::Approx(fd1(tail.eval, x)).epsilon(1e-7));
        CHECK(pt.deriv(x) == doctest::Approx(fd1(pt.eval, x)).epsilon(1e-8));
        CHECK(pt.deriv2(x) == doctest::Approx(fd2(pt.eval, x)).epsilon(1e-6));
    }
}

TEST_CASE("U decays like x^-(2+alpha) on the tail") {
    auto model = make_model_potential();
    double bound = 0.0;
    for (double x = 10.0; x <= 1000.0; x *= 2.0)
        bound = std::max(bound, std::abs(eval_U(model, x)) * std::pow(x, 2.0 + model.alpha));
    CHECK(bound < 10.0);
    CHECK(bound > 0.0);
}

TEST_CASE("even extension: odd derivatives vanish at 0") {
    auto model = make_model_potential();
    const double h = 1e-3;
    // centered odd-order differences of V at 0
    const double d1 = (model.eval(h) - model.eval(-h)) / (2 * h);
    const double d3 =
        (model.eval(2 * h) - 2 * model.eval(h) + 2 * model.eval(-h) - model.eval(-2 * h)) /
        (2 * h * h * h);
    CHECK(std::abs(d1) < 1e-12);
    CHECK(std::abs(d3) < 1e-9);
}

TEST_CASE("check_tail fits the correction exponent") {
    auto model = make_model_potential();
    auto rep = check_tail(model, 10.0, 1000.0, 32);
    CHECK_FALSE(rep.exact_tail);
    CHECK(rep.fitted_alpha == doctest::Approx(2.0).epsilon(0.1));

    auto tail = make_smoothed_inverse_square();
    auto rep2 = check_tail(tail, 1.0, 100.0, 16);
    CHECK(rep2.exact_tail);

    Potential bad = make_zero_potential();
    bad.eval = [](double x) { return -1.0 / x; };
    CHECK_THROWS_AS(check_tail(bad, 1.0, 100.0, 16), NonDecayingTail);
}

TEST_CASE("count_bound_states against the Sturm-sequence oracle") {
    auto zero = make_zero_potential();
    CHECK(count_bound_states(zero, -1.0, 30.0) == 0);

    auto pt = make_poschl_teller(2.0); // one even bound state at E = -1
    CHECK(sturm_count_below(pt, -1e-8, 30.0, 0.01) == 1);
    CHECK(count_bound_states(pt, -3.0, 30.0) == 1);

    auto pt2 = make_poschl_teller(12.0); // levels -9 (even), -4 (odd), -1 (even)
    CHECK(sturm_count_below(pt2, -1e-8, 30.0, 0.005) == 2);
    CHECK(count_bound_states(pt2, -20.0, 30.0) == 2);

    auto model = make_model_potential();
    CHECK(sturm_count_below(model, -1e-8, 60.0, 0.01) == 0);
    CHECK(count_bound_states(model, -1.0, 60.0) == 0);
}

TEST_CASE("count is invariant under shooting-step refinement") {
    auto pt = make_poschl_teller(2.0);
    CHECK(shooting_zero_count(pt, -1e-8, 30.0, 0.05) == shooting_zero_count(pt, -1e-8, 30.0, 0.025));
}

TEST_CASE("FloorTooHigh when eigenvalues lie below the floor") {
    auto pt = make_poschl_teller(2.0); // eigenvalue at -1
    CHECK_THROWS_AS(count_bound_states(pt, -0.5, 30.0), FloorTooHigh);
}

TEST_CASE("table potential reproduces its source") {
    auto model = make_model_potential();
    const int n = 400;
    Vec xs(n), vs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = 20.0 * double(i) / double(n - 1);
        vs[i] = model.eval(xs[i]);
    }
    auto tab = make_table_potential(xs, vs, 2.0);
    for (double x : {0.5, 1.7, 9.3, 18.0}) {
        CHECK(tab.eval(x) == doctest::Approx(model.eval(x)).epsilon(1e-6));
        CHECK(tab.deriv(x) == doctest::Approx(model.deriv(x)).epsilon(1e-3));
    }
    // pure tail beyond the samples
    CHECK(tab.eval(40.0) == doctest::Approx(-0.25 / 1600.0).epsilon(1e-12));
}
