#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hermite.hpp"
#include "numerics.hpp"
#include "quaternion.hpp"
#include "signal.hpp"

namespace qtfa {

// exp(-pi (z^2 + x^2) + 2 pi sqrt2 z x), the Segal-Bargmann kernel at nu = 2 pi.
inline std::complex<double> bargmann_kernel(std::complex<double> z, double x) {
    return std::exp(-pi * (z * z + x * x) + two_pi * std::numbers::sqrt2 * z * x);
}

// (-1)^k 2^{-k/2} kernel(z, x) H_k^{2pi}((z + conj z)/sqrt2 - x): the closed form of
// (d/dz - 2 pi conj z)^k applied to the kernel.
inline std::complex<double> bargmann_kernel_tower(int k, std::complex<double> z, double x) {
    double arg = std::numbers::sqrt2 * z.real() - x;
    double sign = (k % 2) ? -1.0 : 1.0;
    return sign * std::pow(2.0, -0.5 * k) * hermite_poly(k, two_pi, arg) * bargmann_kernel(z, x);
}

// Numerical (d/dz - 2 pi conj z)^k f at z with Wirtinger finite differences.
template <class F>
std::complex<double> creation_tower_numeric(const F& f, std::complex<double> z, int k) {
    if (k == 0) return f(z);
    auto prev = [&](std::complex<double> w) { return creation_tower_numeric(f, w, k - 1); };
    return wirtinger_derivative(prev, z, 1) - two_pi * std::conj(z) * prev(z);
}

namespace detail {

// sum_t w_t c(t) phi(t), with c on the slice C_I multiplying from the left.
template <class C>
Quaternion slice_weighted_sum(const SignalQuadrature& sq, const ImaginaryUnit& I, C&& c) {
    Quaternion re, im;
    for (std::size_t m = 0; m < sq.size(); ++m) {
        std::complex<double> k = sq.w[m] * c(sq.t[m]);
        if (k == 0.0) continue;
        re += k.real() * sq.values[m];
        im += k.imag() * sq.values[m];
    }
    return re + I.times(im);
}

}  // namespace detail

// Segal-Bargmann transform (nu/pi)^{3/4} int exp(-(nu/2)(q^2 + x^2) + nu sqrt2 q x) phi(x) dx at nu = 2 pi.
inline Quaternion segal_bargmann(const SignalQuadrature& sq, const Quaternion& q) {
    SlicePoint s = slice_decompose(q);
    std::complex<double> z = s.complex();
    const double c = std::pow(2.0, 0.75);
    return detail::slice_weighted_sum(sq, s.unit, [&](double t) { return c * bargmann_kernel(z, t); });
}

inline Quaternion segal_bargmann(const Signal& sig, const Quaternion& q) { return segal_bargmann(discretize(sig), q); }

// Polyanalytic Bargmann transform of order n+1 by its integral form
// 2^{3/4} (2^n n! (2pi)^n)^{-1/2} int kernel(q, t) H_n^{2pi}(sqrt2 Re q - t) phi(t) dt.
inline Quaternion true_poly_bargmann_closed(const SignalQuadrature& sq, int n, const Quaternion& q) {
    if (n < 0) throw std::invalid_argument("true_poly_bargmann needs n >= 0");
    SlicePoint s = slice_decompose(q);
    std::complex<double> z = s.complex();
    double c = std::pow(2.0, 0.75) * std::exp(-0.5 * (n * std::log(2.0 * two_pi) + log_factorial(n)));
    double u = std::numbers::sqrt2 * s.x;
    return detail::slice_weighted_sum(sq, s.unit, [&](double t) {
        return c * hermite_poly(n, two_pi, u - t) * bargmann_kernel(z, t);
    });
}

inline Quaternion true_poly_bargmann_closed(const Signal& sig, int n, const Quaternion& q) {
    return true_poly_bargmann_closed(discretize(sig), n, q);
}

// Basis images B^{n+1} psi_k on a slice, through the complex Hermite polynomials:
// B^{n+1} phi(q) = sqrt2 ((2pi)^n n!)^{-1/2} sum_k H^{2pi}_{n,k}(q, conj q) alpha_k / (sqrt(k!) (2pi)^{k/2}).
class TruePolyBasis {
public:
    TruePolyBasis(int n, int K) : n_(n), K_(K) {
        if (n < 0 || K < 1) throw std::invalid_argument("TruePolyBasis needs n >= 0, K >= 1");
        const double a = two_pi;
        double lead = std::numbers::sqrt2 * std::exp(-0.5 * (n * std::log(a) + log_factorial(n)));
        coef_.resize(K);
        for (int k = 0; k < K; ++k) {
            double norm_k = std::exp(-0.5 * (log_factorial(k) + k * std::log(a)));
            // H_{n,k} = a^k n! k! sum_j (-1)^j a^{n-j} z^{k-j} conj(z)^{n-j} / (j!(n-j)!(k-j)!)
            for (int j = 0; j <= std::min(n, k); ++j) {
                double lc = k * std::log(a) + log_factorial(n) + log_factorial(k) + (n - j) * std::log(a) -
                            log_factorial(j) - log_factorial(n - j) - log_factorial(k - j);
                double sgn = (j % 2) ? -1.0 : 1.0;
                coef_[k].push_back(sgn * lead * norm_k * std::exp(lc));
            }
        }
    }

    int order() const { return n_; }
    int size() const { return K_; }

    // Values b_k(z) for k < K, complex on the slice.
    void eval(std::complex<double> z, std::vector<std::complex<double>>& out) const {
        out.assign(K_, 0.0);
        std::vector<std::complex<double>> zp(K_ + 1), zb(n_ + 1);
        zp[0] = zb[0] = 1.0;
        for (int i = 1; i <= K_; ++i) zp[i] = zp[i - 1] * z;
        for (int i = 1; i <= n_; ++i) zb[i] = zb[i - 1] * std::conj(z);
        for (int k = 0; k < K_; ++k) {
            std::complex<double> s = 0;
            for (int j = 0; j < static_cast<int>(coef_[k].size()); ++j) s += coef_[k][j] * zp[k - j] * zb[n_ - j];
            out[k] = s;
        }
    }

    Quaternion operator()(const std::vector<Quaternion>& coeffs, const Quaternion& q) const {
        if (static_cast<int>(coeffs.size()) > K_) throw std::invalid_argument("TruePolyBasis: too many coefficients");
        SlicePoint s = slice_decompose(q);
        std::vector<std::complex<double>> b;
        eval(s.complex(), b);
        Quaternion re, im;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            re += b[k].real() * coeffs[k];
            im += b[k].imag() * coeffs[k];
        }
        return re + s.unit.times(im);
    }

private:
    int n_, K_;
    std::vector<std::vector<double>> coef_;
};

inline Quaternion true_poly_bargmann(const HermiteExpansion& h, int n, const Quaternion& q) {
    h.validate();
    return TruePolyBasis(n, static_cast<int>(h.coeffs.size()))(h.coeffs, q);
}

// Coefficient route for Hermite expansions, integral route for samples.
inline Quaternion true_poly_bargmann(const Signal& sig, int n, const Quaternion& q) {
    if (auto* h = std::get_if<HermiteExpansion>(&sig)) return true_poly_bargmann(*h, n, q);
    return true_poly_bargmann_closed(sig, n, q);
}

// Full-polyanalytic transform sum_j B^{j+1} phi_j(q).
inline Quaternion full_poly_bargmann(const VectorSignal& v, const Quaternion& q) {
    if (v.components.empty()) throw input_error("vector signal needs at least one component");
    Quaternion s;
    for (std::size_t j = 0; j < v.components.size(); ++j) s += true_poly_bargmann(v.components[j], static_cast<int>(j), q);
    return s;
}

// Pointwise bounds sqrt2 e^{pi|q|^2} ||phi|| and sqrt(2(n+1)) e^{pi|q|^2} ||phi_vec||.
inline double true_poly_bound(const Quaternion& q, double signal_norm) {
    return std::numbers::sqrt2 * std::exp(pi * norm_sq(q)) * signal_norm;
}
inline double full_poly_bound(const Quaternion& q, int n, double signal_norm) {
    return std::sqrt(2.0 * (n + 1)) * std::exp(pi * norm_sq(q)) * signal_norm;
}

// Fock inner product int_{C_I} conj(g(q)) f(q) e^{-2pi|q|^2} dA(q).
inline PolarSpec default_fock_spec(int n, int K) {
    return PolarSpec{3.0 + std::sqrt(double(n + K)), 400, 256};
}

template <class F, class G>
QuadratureResult<Quaternion> fock_inner(F&& f, G&& g, const ImaginaryUnit& I, const PolarSpec& spec,
                                        double rel_tol = 1e-4) {
    auto integrand = [&](double u, double v) {
        Quaternion q = I.lift({u, v});
        return std::exp(-two_pi * (u * u + v * v)) * (conj(g(q)) * f(q));
    };
    return integrate_2d(integrand, spec, rel_tol);
}

// Reproducing kernel of the true-polyanalytic Fock space of order n+1:
// on a common slice 2 e^{2pi z conj(w)} L_n^0(2pi|z - w|^2), extended off the slice of r.
inline Quaternion true_fock_kernel(int n, const Quaternion& q, const Quaternion& r) {
    if (n < 0) throw std::invalid_argument("true_fock_kernel needs n >= 0");
    SlicePoint sr = slice_decompose(r);
    ImaginaryUnit J = sr.y == 0 ? slice_decompose(q).unit : sr.unit;
    std::complex<double> w = on_slice(r, J);
    auto f_J = [&](const Quaternion& zq) {
        std::complex<double> z = on_slice(zq, J);
        std::complex<double> v = 2.0 * std::exp(two_pi * z * std::conj(w)) * laguerre(n, 0, two_pi * std::norm(z - w));
        return J.lift(v);
    };
    return representation_extend(f_J, q, J);
}

}  // namespace qtfa
