#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>

namespace qtfa {

// q = w + x i + y j + z k, with ij = k, jk = i, ki = j.
struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_) : w(w_) {}
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    constexpr double real() const { return w; }
    constexpr Quaternion vector_part() const { return {0, x, y, z}; }

    constexpr Quaternion& operator+=(const Quaternion& o) { w += o.w; x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Quaternion& operator-=(const Quaternion& o) { w -= o.w; x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Quaternion& operator*=(double s) { w *= s; x *= s; y *= s; z *= s; return *this; }
    constexpr Quaternion& operator/=(double s) { w /= s; x /= s; y /= s; z /= s; return *this; }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr double norm_sq(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double abs(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

inline Quaternion inverse(const Quaternion& q) {
    double n = norm_sq(q);
    if (n == 0) throw std::domain_error("inverse of zero quaternion");
    return conj(q) / n;
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ")";
}

inline constexpr Quaternion qi{0, 1, 0, 0};
inline constexpr Quaternion qj{0, 0, 1, 0};
inline constexpr Quaternion qk{0, 0, 0, 1};

// Unit pure quaternion I with I^2 = -1. Only constructible normalized.
class ImaginaryUnit {
public:
    static ImaginaryUnit from(double x, double y, double z) {
        double n = std::sqrt(x * x + y * y + z * z);
        if (!(n > 0) || !std::isfinite(n)) throw std::invalid_argument("imaginary unit needs a nonzero finite vector");
        return ImaginaryUnit(Quaternion{0, x / n, y / n, z / n});
    }
    static ImaginaryUnit from(const Quaternion& v) { return from(v.x, v.y, v.z); }
    static ImaginaryUnit i() { return ImaginaryUnit(qi); }
    static ImaginaryUnit j() { return ImaginaryUnit(qj); }
    static ImaginaryUnit k() { return ImaginaryUnit(qk); }

    const Quaternion& q() const { return u_; }
    operator const Quaternion&() const { return u_; }
    ImaginaryUnit operator-() const { return ImaginaryUnit(-u_); }

    // Element a + I b of the slice C_I.
    Quaternion lift(std::complex<double> c) const {
        return {c.real(), c.imag() * u_.x, c.imag() * u_.y, c.imag() * u_.z};
    }
    // I * q without the full product.
    Quaternion times(const Quaternion& q) const { return u_ * q; }

    friend bool operator==(const ImaginaryUnit& a, const ImaginaryUnit& b) { return a.u_ == b.u_; }
    // Equal up to the rounding left by normalization.
    bool same_as(const ImaginaryUnit& o, double tol = 8e-16) const { return norm_sq(u_ - o.u_) <= tol * tol; }

private:
    explicit ImaginaryUnit(const Quaternion& u) : u_(u) {}
    Quaternion u_;
};

// q = x + I y with y >= 0; for real q the unit defaults to i.
struct SlicePoint {
    double x = 0, y = 0;
    ImaginaryUnit unit = ImaginaryUnit::i();

    std::complex<double> complex() const { return {x, y}; }
    Quaternion quaternion() const { return unit.lift(complex()); }
};

inline SlicePoint slice_decompose(const Quaternion& q) {
    double y = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    if (y == 0) return {q.w, 0.0, ImaginaryUnit::i()};
    return {q.w, y, ImaginaryUnit::from(q.x, q.y, q.z)};
}

// Coordinates of q on a given slice C_I; q must lie in that slice.
inline std::complex<double> on_slice(const Quaternion& q, const ImaginaryUnit& I) {
    const Quaternion& u = I.q();
    return {q.w, q.x * u.x + q.y * u.y + q.z * u.z};
}

inline Quaternion slice_power(const Quaternion& q, int n) {
    if (n < 0) throw std::invalid_argument("slice_power needs n >= 0");
    if (n == 0) return Quaternion{1};
    SlicePoint s = slice_decompose(q);
    double r = std::hypot(s.x, s.y);
    double th = std::atan2(s.y, s.x);
    return s.unit.lift(std::polar(std::pow(r, n), n * th));
}

inline Quaternion slice_exp(const Quaternion& q) {
    SlicePoint s = slice_decompose(q);
    double e = std::exp(s.x);
    return s.unit.lift({e * std::cos(s.y), e * std::sin(s.y)});
}

// Extends f_J, a function known on the slice C_J, to a slice-regular value at q.
// f_J takes the point x + J y as a Quaternion.
template <class F>
Quaternion representation_extend(F&& f_J, const Quaternion& q, const ImaginaryUnit& J) {
    SlicePoint s = slice_decompose(q);
    if (s.y == 0) return f_J(Quaternion{s.x});
    if (s.unit.same_as(J)) return f_J(q);
    Quaternion zp = J.lift({s.x, s.y});
    Quaternion zm = J.lift({s.x, -s.y});
    Quaternion fp = f_J(zp);
    Quaternion fm = f_J(zm);
    if (s.unit.same_as(-J)) return fm;
    Quaternion alpha = 0.5 * (fp + fm);
    Quaternion beta = -(J.times(0.5 * (fp - fm)));
    return alpha + s.unit.times(beta);
}

// The eight squared norms entering the polarization identity.
struct PolarizationNorms {
    double plus = 0, minus = 0;            // ||u + v||^2, ||u - v||^2
    std::array<double, 3> tau_plus{};      // ||u tau + v||^2 for tau = i, j, k
    std::array<double, 3> tau_minus{};     // ||u tau - v||^2
};

// 1/4(||u+v||^2 - ||u-v||^2) + 1/4 sum_tau (||u tau+v||^2 - ||u tau-v||^2) tau,
// which equals sum_k conj(u_k) v_k.
inline Quaternion polarization_inner(const PolarizationNorms& n) {
    return Quaternion{0.25 * (n.plus - n.minus),
                      0.25 * (n.tau_plus[0] - n.tau_minus[0]),
                      0.25 * (n.tau_plus[1] - n.tau_minus[1]),
                      0.25 * (n.tau_plus[2] - n.tau_minus[2])};
}

inline PolarizationNorms polarization_norms(std::span<const Quaternion> u, std::span<const Quaternion> v,
                                            std::span<const double> weights = {}) {
    if (u.size() != v.size()) throw std::invalid_argument("polarization_norms: size mismatch");
    if (!weights.empty() && weights.size() != u.size())
        throw std::invalid_argument("polarization_norms: weight size mismatch");
    static const Quaternion taus[3] = {qi, qj, qk};
    PolarizationNorms n;
    for (std::size_t m = 0; m < u.size(); ++m) {
        double wgt = weights.empty() ? 1.0 : weights[m];
        n.plus += wgt * norm_sq(u[m] + v[m]);
        n.minus += wgt * norm_sq(u[m] - v[m]);
        for (int t = 0; t < 3; ++t) {
            Quaternion ut = u[m] * taus[t];
            n.tau_plus[t] += wgt * norm_sq(ut + v[m]);
            n.tau_minus[t] += wgt * norm_sq(ut - v[m]);
        }
    }
    return n;
}

inline Quaternion polarization_inner(std::span<const Quaternion> u, std::span<const Quaternion> v,
                                     std::span<const double> weights = {}) {
    return polarization_inner(polarization_norms(u, v, weights));
}

}  // namespace qtfa
