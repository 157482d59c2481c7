#pragma once

#include <complex>

namespace distwave {

// Order-zero Bessel/Hankel functions on the positive real axis, built from
// three regimes: the ascending power series (z <= 8), integral
// representations evaluated with Gauss-Legendre quadrature (8 < z < 15), and
// 12-term large-argument tails with phase z - pi/4 (z >= 15).

/// J0(z), z >= 0. Absolute error below 1e-12.
double bessel_j0(double z);

/// Y0(z), z > 0; throws DomainError at z <= 0. Absolute error below 1e-10.
double bessel_y0(double z);

/// d/dz J0(z).
double bessel_j0_deriv(double z);

/// d/dz Y0(z), z > 0.
double bessel_y0_deriv(double z);

/// Normalized outgoing/incoming solutions
///   h_pm(z) = sqrt(pi/2) e^{+-i pi/4} sqrt(z) [J0(z) +- i Y0(z)],
/// with h_pm(z) -> e^{+-iz} as z -> infinity. sign must be +1 or -1.
std::complex<double> hankel_h(double z, int sign);

/// d/dz of hankel_h.
std::complex<double> hankel_h_deriv(double z, int sign);

} // namespace distwave
