#include "distwave/grid.hpp"

#include <cmath>

namespace distwave {

Vec uniform_grid(double x_max, double dx) {
    if (x_max <= 0 || dx <= 0) throw DomainError("uniform_grid: x_max and dx must be positive");
    long n = std::lround(x_max / dx);
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    Vec x(n + 1);
    for (long i = 0; i <= n; ++i) x[i] = dx * double(i);
    return x;
}

Vec log_grid(double lo, double hi, int n) {
    if (!(0 < lo && lo < hi) || n < 2) throw DomainError("log_grid: need 0 < lo < hi and n >= 2");
    Vec x(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) x[i] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
    x[0] = lo;
    x[n - 1] = hi;
    return x;
}

Vec simpson_weights(const Vec& x) {
    const long n = x.size() - 1;
    if (n < 2 || n % 2 != 0) throw GridMismatch("simpson_weights: need an even interval count");
    const double h = x[1] - x[0];
    Vec w = Vec::Zero(x.size());
    for (long i = 0; i + 2 <= n; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    return w;
}

Vec log_trapezoid_weights(const Vec& xi) {
    const long n = xi.size();
    if (n < 2) throw GridMismatch("log_trapezoid_weights: need at least two nodes");
    // du spacing in u = log(xi); weight = xi * trapezoid-in-u
    Vec w = Vec::Zero(n);
    for (long i = 0; i + 1 < n; ++i) {
        const double du = std::log(xi[i + 1]) - std::log(xi[i]);
        w[i] += 0.5 * du * xi[i];
        w[i + 1] += 0.5 * du * xi[i + 1];
    }
    return w;
}

Vec log_simpson_weights(const Vec& xi) {
    const long n = xi.size() - 1;
    if (n < 2 || n % 2 != 0) throw GridMismatch("log_simpson_weights: need an even interval count");
    const double du = (std::log(xi[n]) - std::log(xi[0])) / double(n);
    Vec w = Vec::Zero(xi.size());
    for (long i = 0; i + 2 <= n; i += 2) {
        w[i] += du / 3.0 * xi[i];
        w[i + 1] += 4.0 * du / 3.0 * xi[i + 1];
        w[i + 2] += du / 3.0 * xi[i + 2];
    }
    return w;
}

Vec derivative_nonuniform(const Vec& x, const Vec& f) {
    const long n = x.size();
    if (f.size() != n || n < 3) throw GridMismatch("derivative_nonuniform: bad sizes");
    Vec d(n);
    for (long i = 1; i + 1 < n; ++i) {
        const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
        d[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] +
               h1 / (h2 * (h1 + h2)) * f[i + 1];
    }
    {   // left end, quadratic through first three points
        const double h1 = x[1] - x[0], h2 = x[2] - x[1];
        d[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
               h1 / (h2 * (h1 + h2)) * f[2];
    }
    {   // right end
        const double h1 = x[n - 2] - x[n - 3], h2 = x[n - 1] - x[n - 2];
        d[n - 1] = h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2] +
                   (h1 + 2 * h2) / (h2 * (h1 + h2)) * f[n - 1];
    }
    return d;
}

Vec derivative_uniform(const Vec& x, const Vec& f, bool even_at_zero) {
    const long n = x.size();
    if (f.size() != n || n < 3) throw GridMismatch("derivative_uniform: bad sizes");
    const double h = x[1] - x[0];
    Vec d(n);
    for (long i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2 * h);
    if (even_at_zero) {
        d[0] = 0.0; // even extension: f(-h) = f(h)
    } else {
        d[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
    }
    d[n - 1] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * h);
    return d;
}

Vec second_derivative_uniform(const Vec& x, const Vec& f, bool even_at_zero) {
    const long n = x.size();
    if (f.size() != n || n < 4) throw GridMismatch("second_derivative_uniform: bad sizes");
    const double h2 = (x[1] - x[0]) * (x[1] - x[0]);
    Vec d(n);
    for (long i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2 * f[i] + f[i - 1]) / h2;
    if (even_at_zero) {
        d[0] = 2 * (f[1] - f[0]) / h2; // ghost f(-h) = f(h)
    } else {
        d[0] = (2 * f[0] - 5 * f[1] + 4 * f[2] - f[3]) / h2;
    }
    d[n - 1] = (2 * f[n - 1] - 5 * f[n - 2] + 4 * f[n - 3] - f[n - 4]) / h2;
    return d;
}

} // namespace distwave
