#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "numerics.hpp"
#include "quaternion.hpp"

namespace qtfa {

// Weighted Hermite polynomial H_n^nu by H_0 = 1, H_1 = 2 nu x,
// H_{n+1} = 2 nu x H_n - 2 n nu H_{n-1}.
inline double hermite_poly(int n, double nu, double x) {
    if (n < 0) throw std::invalid_argument("hermite_poly needs n >= 0");
    if (!(nu > 0)) throw std::invalid_argument("hermite_poly needs nu > 0");
    double h0 = 1;
    if (n == 0) return h0;
    double h1 = 2 * nu * x;
    for (int k = 1; k < n; ++k) {
        double h2 = 2 * nu * x * h1 - 2 * k * nu * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// Closed sum n! sum_m (-1)^m nu^m (2 nu x)^{n-2m} / (m! (n-2m)!).
inline double hermite_poly_explicit(int n, double nu, double x) {
    if (n < 0) throw std::invalid_argument("hermite_poly_explicit needs n >= 0");
    double s = 0;
    for (int m = 0; 2 * m <= n; ++m) {
        double term = std::pow(-nu, m) * std::pow(2 * nu * x, n - 2 * m) / (factorial(m) * factorial(n - 2 * m));
        s += term;
    }
    return factorial(n) * s;
}

// d/dx H_n^nu = 2 nu n H_{n-1}^nu.
inline double hermite_poly_derivative(int n, double nu, double x) {
    if (n == 0) return 0;
    return 2 * nu * n * hermite_poly(n - 1, nu, x);
}

// ||h_n^nu||^2 = 2^n nu^n n! sqrt(pi / nu).
inline double hermite_norm_sq(int n, double nu) {
    return std::exp(n * std::log(2 * nu) + log_factorial(n)) * std::sqrt(pi / nu);
}

// Normalized functions h_k^nu / ||h_k^nu|| for k = 0..n_max, by the scaled recurrence
// e_{k+1} = x sqrt(2 nu/(k+1)) e_k - sqrt(k/(k+1)) e_{k-1}, which stays bounded for large k.
inline std::vector<double> normalized_hermite_fns(int n_max, double nu, double x) {
    if (n_max < 0) throw std::invalid_argument("normalized_hermite_fns needs n_max >= 0");
    std::vector<double> e(n_max + 1);
    e[0] = std::pow(nu / pi, 0.25) * std::exp(-0.5 * nu * x * x);
    if (n_max >= 1) e[1] = x * std::sqrt(2 * nu) * e[0];
    for (int k = 1; k < n_max; ++k)
        e[k + 1] = x * std::sqrt(2 * nu / (k + 1)) * e[k] - std::sqrt(double(k) / (k + 1)) * e[k - 1];
    return e;
}

// Single normalized function, same recurrence without storage.
inline double normalized_hermite_fn(int n, double nu, double x) {
    double e0 = std::pow(nu / pi, 0.25) * std::exp(-0.5 * nu * x * x);
    if (n == 0) return e0;
    double e1 = x * std::sqrt(2 * nu) * e0;
    for (int k = 1; k < n; ++k) {
        double e2 = x * std::sqrt(2 * nu / (k + 1)) * e1 - std::sqrt(double(k) / (k + 1)) * e0;
        e0 = e1;
        e1 = e2;
    }
    return e1;
}

// h_n^nu(x) = H_n^nu(x) exp(-nu x^2 / 2).
inline double hermite_fn(int n, double nu, double x) {
    if (n < 0) throw std::invalid_argument("hermite_fn needs n >= 0");
    return normalized_hermite_fn(n, nu, x) * std::sqrt(hermite_norm_sq(n, nu));
}

// Unit-norm window psi_n = h_n^{2 pi} / ||h_n^{2 pi}||; psi_0 = 2^{1/4} exp(-pi t^2).
inline double window(int n, double t) {
    if (n < 0) throw std::invalid_argument("window needs n >= 0");
    return normalized_hermite_fn(n, two_pi, t);
}

inline std::vector<double> windows(int n_max, double t) { return normalized_hermite_fns(n_max, two_pi, t); }

// Complex Hermite polynomial H^alpha_{m,p}(z, conj z) =
// alpha^p m! sum_j (-1)^j p! / (j!(m-j)!(p-j)!) alpha^{m-j} z^{p-j} conj(z)^{m-j}.
inline std::complex<double> complex_hermite(int m, int p, double alpha, std::complex<double> z) {
    if (m < 0 || p < 0) throw std::invalid_argument("complex_hermite needs m, p >= 0");
    if (!(alpha > 0)) throw std::invalid_argument("complex_hermite needs alpha > 0");
    std::complex<double> zb = std::conj(z);
    std::complex<double> s = 0;
    double pref = std::pow(alpha, p) * factorial(m) * factorial(p);
    for (int j = 0; j <= std::min(m, p); ++j) {
        double c = ((j % 2) ? -1.0 : 1.0) * std::pow(alpha, m - j) / (factorial(j) * factorial(m - j) * factorial(p - j));
        s += c * std::pow(z, p - j) * std::pow(zb, m - j);
    }
    return pref * s;
}

// Quaternion argument: evaluated on the slice of q, where q and conj(q) commute.
inline Quaternion complex_hermite(int m, int p, double alpha, const Quaternion& q) {
    SlicePoint s = slice_decompose(q);
    return s.unit.lift(complex_hermite(m, p, alpha, s.complex()));
}

// Generalized Laguerre L_n^beta(x) = sum_k (-1)^k C(n+beta, n-k) x^k / k!.
inline double laguerre(int n, double beta, double x) {
    if (n < 0) throw std::invalid_argument("laguerre needs n >= 0");
    if (!(beta > -1)) throw std::invalid_argument("laguerre needs beta > -1");
    double s = 0, xk = 1;
    for (int k = 0; k <= n; ++k) {
        s += ((k % 2) ? -1.0 : 1.0) * binomial(n + beta, n - k) * xk;
        xk *= x / (k + 1);
    }
    return s;
}

// Polar form alpha^p m! (-1)^m e^{i theta (p-m)} r^{p-m} L_m^{p-m}(alpha r^2), valid for p >= m.
inline std::complex<double> complex_hermite_polar(int m, int p, double alpha, double r, double theta) {
    if (p < m) throw std::invalid_argument("complex_hermite_polar needs p >= m");
    double mag = std::pow(alpha, p) * factorial(m) * ((m % 2) ? -1.0 : 1.0) * std::pow(r, p - m) *
                 laguerre(m, p - m, alpha * r * r);
    return std::polar(1.0, theta * (p - m)) * mag;
}

// Partial sum sum_{n<N} H_n^nu(x) lambda^n / n! of exp(-nu lambda^2 + 2 nu x lambda),
// accumulated through u_n = H_n lambda^n / n!.
inline double generating_partial_sum(int N, double nu, double x, double lambda) {
    if (N <= 0) return 0;
    double u0 = 1, s = u0;
    if (N == 1) return s;
    double u1 = 2 * nu * x * lambda;
    s += u1;
    for (int n = 1; n + 1 < N; ++n) {
        double u2 = (2 * nu * x * lambda * u1 - 2 * nu * lambda * lambda * u0) / (n + 1);
        s += u2;
        u0 = u1;
        u1 = u2;
    }
    return s;
}

}  // namespace qtfa
