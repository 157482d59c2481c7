#include "distwave/potential.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "distwave/odesolve.hpp"

namespace distwave {

Potential make_zero_potential() {
    Potential p;
    p.name = "zero";
    p.eval = [](double) { return 0.0; };
    p.deriv = [](double) { return 0.0; };
    p.deriv2 = [](double) { return 0.0; };
    p.alpha = 0.0;
    p.even_extension = true;
    p.tail = TailKind::none;
    return p;
}

// A purely attractive potential with the critical -1/(4x^2) tail always
// produces one Neumann bound state (the zero-energy solution enters the tail
// with negative slope and every positive tail solution has x f'/f -> 1/2, so
// it must cross zero). The bundled model therefore carries a repulsive core:
//   V(x) = x^2 (8 - x^2) / (4 (1+x^2)^3) = -1/(4x^2) [1 - 11 x^-2 + O(x^-4)].
// Its zero-energy tail coefficient a1 ~ +0.22 is safely nonresonant and the
// bound-state count is zero (both verified by independent oracles in tests).
Potential make_model_potential() {
    constexpr double c = 8.0;
    Potential p;
    p.name = "model";
    p.eval = [](double x) {
        const double d = 1.0 + x * x;
        return x * x * (c - x * x) / (4.0 * d * d * d);
    };
    p.deriv = [](double x) {
        const double d = 1.0 + x * x;
        const double x2 = x * x;
        return 0.5 * x * (c - (2.0 + 2.0 * c) * x2 + x2 * x2) / (d * d * d * d);
    };
    p.deriv2 = [](double x) {
        const double d = 1.0 + x * x;
        const double x2 = x * x;
        return 0.5 * (c - (13.0 * c + 6.0) * x2 + (10.0 * c + 15.0) * x2 * x2 - 3.0 * x2 * x2 * x2) /
               (d * d * d * d * d);
    };
    p.alpha = 2.0;
    p.even_extension = true;
    p.tail = TailKind::inverse_square_quarter;
    return p;
}

Potential make_poschl_teller(double depth) {
    Potential p;
    p.name = "poschl_teller";
    p.eval = [depth](double x) {
        const double s = 1.0 / std::cosh(x);
        return -depth * s * s;
    };
    p.deriv = [depth](double x) {
        const double s = 1.0 / std::cosh(x);
        return 2.0 * depth * s * s * std::tanh(x);
    };
    p.deriv2 = [depth](double x) {
        const double s = 1.0 / std::cosh(x);
        const double t = std::tanh(x);
        return 2.0 * depth * s * s * (s * s - 2.0 * t * t);
    };
    p.alpha = 0.0;
    p.even_extension = true;
    p.tail = TailKind::exponential;
    return p;
}

namespace {

// C^inf step: 0 for t <= 0, 1 for t >= 1, built from h(t) = exp(-1/t).
struct SmoothStep {
    static double h(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }
    static double hp(double t) { return t > 0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }
    static double hpp(double t) {
        return t > 0 ? std::exp(-1.0 / t) * (1.0 / (t * t * t * t) - 2.0 / (t * t * t)) : 0.0;
    }
    static double value(double t) {
        if (t <= 0) return 0.0;
        if (t >= 1) return 1.0;
        const double A = h(t), B = h(1 - t);
        return A / (A + B);
    }
    static double deriv(double t) {
        if (t <= 0 || t >= 1) return 0.0;
        const double A = h(t), B = h(1 - t);
        const double Ap = hp(t), Bp = -hp(1 - t);
        const double S = A + B;
        return (Ap * B - A * Bp) / (S * S);
    }
    static double deriv2(double t) {
        if (t <= 0 || t >= 1) return 0.0;
        const double A = h(t), B = h(1 - t);
        const double Ap = hp(t), Bp = -hp(1 - t);
        const double App = hpp(t), Bpp = hpp(1 - t);
        const double S = A + B, Sp = Ap + Bp;
        return ((App * B - A * Bpp) * S - 2.0 * (Ap * B - A * Bp) * Sp) / (S * S * S);
    }
};

} // namespace

Potential make_smoothed_inverse_square(double a, double b) {
    if (!(0 < a && a < b)) throw DomainError("make_smoothed_inverse_square: need 0 < a < b");
    const double span = b - a;
    auto m = [a, span](double x) { return SmoothStep::value((x - a) / span); };
    auto mp = [a, span](double x) { return SmoothStep::deriv((x - a) / span) / span; };
    auto mpp = [a, span](double x) { return SmoothStep::deriv2((x - a) / span) / (span * span); };

    Potential p;
    p.name = "tail";
    p.eval = [m](double x) {
        if (x <= 0) return 0.0;
        return -0.25 * m(x) / (x * x);
    };
    p.deriv = [m, mp](double x) {
        if (x <= 0) return 0.0;
        return 0.5 * m(x) / (x * x * x) - 0.25 * mp(x) / (x * x);
    };
    p.deriv2 = [m, mp, mpp](double x) {
        if (x <= 0) return 0.0;
        return -1.5 * m(x) / (x * x * x * x) + mp(x) / (x * x * x) - 0.25 * mpp(x) / (x * x);
    };
    p.alpha = 8.0; // correction vanishes identically beyond b; any large value
    p.even_extension = false;
    p.tail = TailKind::inverse_square_quarter;
    return p;
}

namespace {

struct Spline {
    Vec x, y, ypp; // natural cubic spline second derivatives
    double operator()(double t) const {
        long lo = 0, hi = x.size() - 1;
        while (hi - lo > 1) {
            const long mid = (lo + hi) / 2;
            (x[mid] > t ? hi : lo) = mid;
        }
        const double h = x[hi] - x[lo];
        const double A = (x[hi] - t) / h, B = (t - x[lo]) / h;
        return A * y[lo] + B * y[hi] +
               ((A * A * A - A) * ypp[lo] + (B * B * B - B) * ypp[hi]) * h * h / 6.0;
    }
};

Spline build_spline(const Vec& x, const Vec& y) {
    const long n = x.size();
    if (n < 4 || y.size() != n) throw GridMismatch("table potential: need >= 4 samples");
    Spline s;
    s.x = x;
    s.y = y;
    s.ypp = Vec::Zero(n);
    Vec u = Vec::Zero(n);
    for (long i = 1; i + 1 < n; ++i) {
        const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        const double pv = sig * s.ypp[i - 1] + 2.0;
        s.ypp[i] = (sig - 1.0) / pv;
        u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / pv;
    }
    for (long i = n - 2; i >= 0; --i) s.ypp[i] = s.ypp[i] * s.ypp[i + 1] + u[i];
    return s;
}

} // namespace

Potential make_table_potential(const Vec& x, const Vec& v, double alpha) {
    auto spline = std::make_shared<Spline>(build_spline(x, v));
    const double x_last = x[x.size() - 1];
    auto value = [spline, x_last](double t) -> double {
        if (t > x_last) return -0.25 / (t * t);
        if (t < spline->x[0]) t = spline->x[0];
        return (*spline)(t);
    };
    // 5-point centered stencils on the spline
    const double h = 1e-3;
    Potential p;
    p.name = "table";
    p.eval = value;
    p.deriv = [value, h](double t) {
        return (value(t - 2 * h) - 8 * value(t - h) + 8 * value(t + h) - value(t + 2 * h)) / (12 * h);
    };
    p.deriv2 = [value, h](double t) {
        return (-value(t - 2 * h) + 16 * value(t - h) - 30 * value(t) + 16 * value(t + h) -
                value(t + 2 * h)) / (12 * h * h);
    };
    p.alpha = alpha;
    p.even_extension = false;
    p.tail = TailKind::inverse_square_quarter;
    return p;
}

double eval_U(const Potential& pot, double x) {
    if (x < 0) throw DomainError("eval_U: x must be nonnegative");
    return -2.0 * pot.eval(x) - x * pot.deriv(x);
}

TailReport check_tail(const Potential& pot, double x_min, double x_max, int n) {
    if (!(1.0 <= x_min && x_min < x_max) || n < 8)
        throw DomainError("check_tail: need 1 <= x_min < x_max and n >= 8");
    TailReport rep;
    rep.x = log_grid(x_min, x_max, n);
    rep.ratio.resize(n);
    for (int i = 0; i < n; ++i) rep.ratio[i] = -4.0 * rep.x[i] * rep.x[i] * pot.eval(rep.x[i]);

    Vec dev = (rep.ratio.array() - 1.0).abs();
    if (dev.maxCoeff() < 1e-12) {
        rep.exact_tail = true;
        rep.fitted_alpha = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }

    // monotone decrease (10% slack) over the top decade
    const double decade_lo = rep.x[n - 1] / 10.0;
    double prev = -1.0;
    for (int i = 0; i < n; ++i) {
        if (rep.x[i] < decade_lo) continue;
        if (prev >= 0.0 && dev[i] > 1.1 * prev)
            throw NonDecayingTail("check_tail: |ratio - 1| grows over the top decade");
        prev = dev[i];
    }

    // least squares log|ratio-1| ~ c - alpha log x
    double sl = 0, sll = 0, sy = 0, sly = 0;
    int m = 0;
    for (int i = 0; i < n; ++i) {
        if (dev[i] < 1e-14) continue;
        const double lx = std::log(rep.x[i]), ly = std::log(dev[i]);
        sl += lx;
        sll += lx * lx;
        sy += ly;
        sly += lx * ly;
        ++m;
    }
    if (m < 2) {
        rep.exact_tail = true;
        rep.fitted_alpha = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }
    const double slope = (double(m) * sly - sl * sy) / (double(m) * sll - sl * sl);
    rep.fitted_alpha = -slope;
    return rep;
}

int shooting_zero_count(const Potential& pot, double E, double x_max, double dx_sample) {
    Vec x = uniform_grid(x_max, dx_sample);
    Vec f(x.size()), df(x.size());
    integrate_linear_second_order(
        [&](double t) { return pot.eval(t) - E; }, x, 1.0, 0.0, f, df, Ode2Options{});
    int zeros = 0;
    for (long i = 1; i < x.size(); ++i)
        if (f[i - 1] != 0.0 && std::signbit(f[i]) != std::signbit(f[i - 1])) ++zeros;
    return zeros;
}

int count_bound_states(const Potential& pot, double E_floor, double x_max) {
    if (E_floor >= 0) throw DomainError("count_bound_states: E_floor must be negative");
    if (shooting_zero_count(pot, E_floor, x_max) > 0)
        throw FloorTooHigh("count_bound_states: solution at E_floor oscillates");
    // geometric sweep up to just below zero; the count at the top is the answer
    int count = 0;
    double E = E_floor;
    while (E < -1e-8) {
        count = shooting_zero_count(pot, E, x_max);
        E *= 0.25;
    }
    count = shooting_zero_count(pot, -1e-8, x_max);
    return count;
}

} // namespace distwave
