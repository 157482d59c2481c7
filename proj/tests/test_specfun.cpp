#include <doctest.h>

#include <cmath>
#include <complex>

#include "distwave/errors.hpp"
#include "distwave/specfun.hpp"

using namespace distwave;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent series oracle: 30+ terms of sum (-z^2/4)^k / (k!)^2 summed in
// long double, valid well past the implementation's series branch.
long double oracle_j0(long double z) {
    const long double q = -0.25L * z * z;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k <= 80; ++k) {
        term *= q / (long double)(k) / (long double)(k);
        sum += term;
    }
    return sum;
}

long double oracle_y0(long double z) {
    const long double gamma = 0.577215664901532860606512L;
    const long double q = -0.25L * z * z;
    long double term = 1.0L, sum = 0.0L, h = 0.0L;
    for (int k = 1; k <= 80; ++k) {
        term *= q / (long double)(k) / (long double)(k);
        h += 1.0L / (long double)(k);
        sum += -term * h;
    }
    return (2.0L / kPi) * ((std::log(0.5L * z) + gamma) * oracle_j0(z) + sum);
}

} // namespace

TEST_CASE("bessel_j0 basics") {
    CHECK(bessel_j0(0.0) == 1.0);
    // frozen from the series oracle
    CHECK(bessel_j0(1.0) == doctest::Approx(0.765197686557967).epsilon(1e-13));
    for (double z : {0.3, 1.7, 3.9, 5.5, 7.2}) {
        CHECK(std::abs(bessel_j0(z) - double(oracle_j0(z))) < 1e-13);
    }
}

TEST_CASE("bessel_j0 asymptotic envelope at z = 10") {
    const double z = 10.0;
    const double env = std::sqrt(2.0 / (kPi * z)) * 1.1;
    CHECK(std::abs(bessel_j0(z)) <= env);
    CHECK(std::abs(bessel_j0(z) - double(oracle_j0(z))) < 1e-11);
}

TEST_CASE("bessel_y0 basics") {
    CHECK(bessel_y0(1.0) == doctest::Approx(0.088256964215677).epsilon(1e-11));
    CHECK_THROWS_AS(bessel_y0(0.0), DomainError);
    // small-z law: y0 - (2/pi)(log(z/2) + gamma) -> 0
    const double z = 1e-6;
    const double gamma = 0.57721566490153286061;
    const double law = (2.0 / kPi) * (std::log(0.5 * z) + gamma);
    CHECK(std::abs(bessel_y0(z) - law) < 1e-10);
}

TEST_CASE("order-zero Wronskian J0 Y0' - J0' Y0 = 2/(pi z)") {
    for (double z : {0.5, 5.0, 50.0}) {
        const double w = bessel_j0(z) * bessel_y0_deriv(z) - bessel_j0_deriv(z) * bessel_y0(z);
        CHECK(std::abs(w - 2.0 / (kPi * z)) < 1e-9);
    }
    // also exercise the quadrature band
    for (double z : {9.0, 11.0, 14.0}) {
        const double w = bessel_j0(z) * bessel_y0_deriv(z) - bessel_j0_deriv(z) * bessel_y0(z);
        CHECK(std::abs(w - 2.0 / (kPi * z)) < 1e-11);
    }
}

TEST_CASE("series and large-z branches agree on the switchover band") {
    // the series is still accurate past the cut; compare it against the
    // branch actually used above the cut
    for (double z = 7.5; z <= 8.5; z += 0.1) {
        CHECK(std::abs(bessel_j0(z) - double(oracle_j0(z))) < 1e-9);
        CHECK(std::abs(bessel_y0(z) - double(oracle_y0(z))) < 1e-9);
    }
}

TEST_CASE("derivatives match finite differences of the implementation") {
    const double h = 1e-6;
    for (double z : {0.7, 4.0, 9.5, 20.0, 300.0}) {
        const double fd_j = (bessel_j0(z + h) - bessel_j0(z - h)) / (2 * h);
        const double fd_y = (bessel_y0(z + h) - bessel_y0(z - h)) / (2 * h);
        CHECK(std::abs(bessel_j0_deriv(z) - fd_j) < 2e-9);
        CHECK(std::abs(bessel_y0_deriv(z) - fd_y) < 2e-9);
    }
}

TEST_CASE("hankel_h asymptotics and conjugation") {
    const std::complex<double> i(0, 1);
    // |h+(50) e^{-i 50} - 1| < 0.01
    const std::complex<double> r = hankel_h(50.0, +1) * std::exp(-i * 50.0);
    CHECK(std::abs(r - 1.0) < 0.01);

    for (double z : {0.3, 2.0, 40.0}) {
        const auto hp = hankel_h(z, +1);
        const auto hm = hankel_h(z, -1);
        CHECK(std::abs(hm - std::conj(hp)) < 1e-12 * (1.0 + std::abs(hp)));
    }

    // |h+(z)| small-z growth bound ~ z^{1/2-} (the constant absorbs the log)
    const double z = 1e-4;
    CHECK(std::abs(hankel_h(z, +1)) < std::pow(z, 0.49) * 10.0);
    CHECK_THROWS_AS(hankel_h(0.0, +1), DomainError);
}

TEST_CASE("hankel fundamental-system Wronskian constant across decades") {
    // h+ h-' - h+' h- is z-independent; check three decades against z = 1
    const std::complex<double> ref = hankel_h(1.0, +1) * hankel_h_deriv(1.0, -1) -
                                     hankel_h_deriv(1.0, +1) * hankel_h(1.0, -1);
    for (double z : {0.05, 0.5, 5.0, 50.0}) {
        const std::complex<double> w =
            hankel_h(z, +1) * hankel_h_deriv(z, -1) - hankel_h_deriv(z, +1) * hankel_h(z, -1);
        CHECK(std::abs(w - ref) < 1e-9 * std::abs(ref));
    }
}
