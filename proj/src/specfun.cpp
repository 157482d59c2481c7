#include "distwave/specfun.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "distwave/errors.hpp"

namespace distwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kSeriesCut = 8.0;
constexpr double kAsymptoticCut = 15.0;

// ---------------------------------------------------------------------------
// Power series, z <= 8. J0 = sum (-z^2/4)^k / (k!)^2. The Y0 companion series
// carries the harmonic numbers H_k.
// ---------------------------------------------------------------------------

double j0_series(double z) {
    const double q = -0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / double(k) / double(k);
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

double y0_series(double z) {
    const double q = -0.25 * z * z;
    double term = 1.0, sum = 0.0, harmonic = 0.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / double(k) / double(k);
        harmonic += 1.0 / double(k);
        const double contrib = -term * harmonic; // (-1)^{k+1} H_k (z^2/4)^k/(k!)^2
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return (2.0 / kPi) * ((std::log(0.5 * z) + kEulerGamma) * j0_series(z) + sum);
}

double j0_series_deriv(double z) {
    // J0'(z) = -(z/2) sum (-z^2/4)^k / (k! (k+1)!)
    const double q = -0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / double(k) / double(k + 1);
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -0.5 * z * sum;
}

double y0_series_deriv(double z) {
    // Differentiate the y0 series: d/dz[(2/pi)(log(z/2)+gamma)J0] + correction'.
    const double q = -0.25 * z * z;
    double term = 1.0, sum = 0.0, harmonic = 0.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / double(k) / double(k);
        harmonic += 1.0 / double(k);
        const double contrib = -term * harmonic * 2.0 * double(k) / z;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return (2.0 / kPi) * (j0_series(z) / z + (std::log(0.5 * z) + kEulerGamma) * j0_series_deriv(z) + sum);
}

// ---------------------------------------------------------------------------
// Gauss-Legendre rule (cached), used for the integral representations
//   J0(z)  = (1/pi) int_0^pi cos(z sin t) dt
//   Y0(z)  = (1/pi) int_0^pi sin(z sin t) dt - (2/pi) int_0^inf e^{-z sinh s} ds
// on the band 8 < z < 15 where neither the series nor the short tails reach
// the target accuracy.
// ---------------------------------------------------------------------------

struct GaussRule {
    std::vector<double> node, weight; // on [-1, 1]
};

const GaussRule& gauss_legendre_96() {
    static const GaussRule rule = [] {
        constexpr int n = 96;
        GaussRule r;
        r.node.resize(n);
        r.weight.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - double(j) * p2) / double(j + 1);
                }
                pp = double(n) * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            r.node[i] = x;
            r.weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        }
        return r;
    }();
    return rule;
}

template <typename F>
double gauss_integral(double a, double b, F&& f) {
    const GaussRule& g = gauss_legendre_96();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < g.node.size(); ++i) s += g.weight[i] * f(mid + half * g.node[i]);
    return half * s;
}

double sinh_tail_integral(double z, int moment) {
    // int_0^inf sinh(s)^moment e^{-z sinh s} ds, truncated where the integrand
    // is below 1e-40 for z >= 8.
    return gauss_integral(0.0, 3.2, [&](double s) {
        const double sh = std::sinh(s);
        double m = 1.0;
        for (int k = 0; k < moment; ++k) m *= sh;
        return m * std::exp(-z * sh);
    });
}

double j0_band(double z) {
    return gauss_integral(0.0, kPi, [&](double t) { return std::cos(z * std::sin(t)); }) / kPi;
}

double y0_band(double z) {
    const double osc = gauss_integral(0.0, kPi, [&](double t) { return std::sin(z * std::sin(t)); });
    return osc / kPi - (2.0 / kPi) * sinh_tail_integral(z, 0);
}

double j0_band_deriv(double z) {
    return -gauss_integral(0.0, kPi, [&](double t) {
        const double s = std::sin(t);
        return s * std::sin(z * s);
    }) / kPi;
}

double y0_band_deriv(double z) {
    const double osc = gauss_integral(0.0, kPi, [&](double t) {
        const double s = std::sin(t);
        return s * std::cos(z * s);
    });
    return osc / kPi + (2.0 / kPi) * sinh_tail_integral(z, 1);
}

// ---------------------------------------------------------------------------
// Large-argument tails, z >= 15:
//   J0 = sqrt(2/(pi z)) [P cos w - Q sin w],  Y0 = sqrt(2/(pi z)) [P sin w + Q cos w]
// with w = z - pi/4 and 12 terms in each of P and Q. The order-one analogues
// (phase z - 3pi/4) supply the derivatives via J0' = -J1, Y0' = -Y1.
// ---------------------------------------------------------------------------

struct Tails {
    double p, q;
};

Tails asymptotic_tails(double z, double nu4) { // nu4 = 4 nu^2
    constexpr int kTerms = 12;
    double ak = 1.0; // a_0
    double p = 0.0, q = 0.0, sign_p = 1.0, sign_q = 1.0;
    int kp = 0, kq = 0;
    for (int k = 0; kp < kTerms || kq < kTerms; ++k) {
        if (k % 2 == 0 && kp < kTerms) {
            p += sign_p * ak / std::pow(z, k);
            sign_p = -sign_p;
            ++kp;
        }
        if (k % 2 == 1 && kq < kTerms) {
            q += sign_q * ak / std::pow(z, k);
            sign_q = -sign_q;
            ++kq;
        }
        const double odd = 2.0 * k + 1.0;
        ak *= (nu4 - odd * odd) / (8.0 * double(k + 1));
    }
    return {p, q};
}

struct JY {
    double j, y;
};

JY jy_asymptotic(double z, double nu) {
    const Tails t = asymptotic_tails(z, 4.0 * nu * nu);
    const double w = z - (0.5 * nu + 0.25) * kPi;
    const double amp = std::sqrt(2.0 / (kPi * z));
    return {amp * (t.p * std::cos(w) - t.q * std::sin(w)),
            amp * (t.p * std::sin(w) + t.q * std::cos(w))};
}

} // namespace

double bessel_j0(double z) {
    if (z < 0) throw DomainError("bessel_j0: negative argument");
    if (z <= kSeriesCut) return j0_series(z);
    if (z < kAsymptoticCut) return j0_band(z);
    return jy_asymptotic(z, 0.0).j;
}

double bessel_y0(double z) {
    if (z <= 0) throw DomainError("bessel_y0: argument must be positive");
    if (z <= kSeriesCut) return y0_series(z);
    if (z < kAsymptoticCut) return y0_band(z);
    return jy_asymptotic(z, 0.0).y;
}

double bessel_j0_deriv(double z) {
    if (z < 0) throw DomainError("bessel_j0_deriv: negative argument");
    if (z <= kSeriesCut) return j0_series_deriv(z);
    if (z < kAsymptoticCut) return j0_band_deriv(z);
    return -jy_asymptotic(z, 1.0).j;
}

double bessel_y0_deriv(double z) {
    if (z <= 0) throw DomainError("bessel_y0_deriv: argument must be positive");
    if (z <= kSeriesCut) return y0_series_deriv(z);
    if (z < kAsymptoticCut) return y0_band_deriv(z);
    return -jy_asymptotic(z, 1.0).y;
}

std::complex<double> hankel_h(double z, int sign) {
    if (z <= 0) throw DomainError("hankel_h: argument must be positive");
    if (sign != 1 && sign != -1) throw DomainError("hankel_h: sign must be +-1");
    const double s = double(sign);
    const std::complex<double> phase(std::cos(s * kPi / 4.0), std::sin(s * kPi / 4.0));
    const std::complex<double> h0(bessel_j0(z), s * bessel_y0(z));
    return std::sqrt(kPi / 2.0) * phase * std::sqrt(z) * h0;
}

std::complex<double> hankel_h_deriv(double z, int sign) {
    if (z <= 0) throw DomainError("hankel_h_deriv: argument must be positive");
    if (sign != 1 && sign != -1) throw DomainError("hankel_h_deriv: sign must be +-1");
    const double s = double(sign);
    const std::complex<double> phase(std::cos(s * kPi / 4.0), std::sin(s * kPi / 4.0));
    const std::complex<double> h0(bessel_j0(z), s * bessel_y0(z));
    const std::complex<double> h0p(bessel_j0_deriv(z), s * bessel_y0_deriv(z));
    return std::sqrt(kPi / 2.0) * phase * (0.5 / std::sqrt(z) * h0 + std::sqrt(z) * h0p);
}

} // namespace distwave
