#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bargmann.hpp"
#include "hermite.hpp"
#include "numerics.hpp"
#include "quaternion.hpp"
#include "signal.hpp"

namespace qtfa {

struct UniformGrid {
    double min = -1, max = 1;
    int count = 2;

    void validate() const {
        if (count < 2 || !std::isfinite(min) || !std::isfinite(max) || !(max > min))
            throw input_error("grid needs finite min < max and at least 2 nodes");
    }
    double step() const { return (max - min) / (count - 1); }
    double at(int i) const { return i == count - 1 ? max : min + i * step(); }
    // Trapezoid weight of node i.
    double weight(int i) const { return (i == 0 || i == count - 1) ? 0.5 * step() : step(); }
    friend bool operator==(const UniformGrid&, const UniformGrid&) = default;
};

// Time x frequency grid; values are stored with x as the slow index.
struct FieldGrid {
    UniformGrid x, omega;
    void validate() const {
        x.validate();
        omega.validate();
    }
    std::size_t size() const { return std::size_t(x.count) * omega.count; }
    friend bool operator==(const FieldGrid&, const FieldGrid&) = default;
};

// Square grid [-T, T]^2 with T = 4 + sqrt(n_max + K).
inline FieldGrid default_field_grid(int n_max, int K, int nodes = 256) {
    double T = 4.0 + std::sqrt(double(std::max(0, n_max + K)));
    return {{-T, T, nodes}, {-T, T, nodes}};
}

struct TimeFreqField {
    FieldGrid grid;
    ImaginaryUnit unit = ImaginaryUnit::i();
    int window_order = 0;            // n; for full fields the highest component order
    bool full = false;               // sum over windows psi_0..psi_n of a vector signal
    std::vector<double> signal_norms;  // per component
    std::vector<Quaternion> values;

    const Quaternion& at(int ix, int iw) const { return values[std::size_t(ix) * grid.omega.count + iw]; }
    Quaternion& at(int ix, int iw) { return values[std::size_t(ix) * grid.omega.count + iw]; }
    double weight(int ix, int iw) const { return grid.x.weight(ix) * grid.omega.weight(iw); }

    double signal_norm() const {
        double s = 0;
        for (double v : signal_norms) s += v * v;
        return std::sqrt(s);
    }
};

// ---------------------------------------------------------------------------
// Point evaluations

// sqrt2 int e^{-2 pi I omega t} psi_n(x - t) phi(t) dt.
inline Quaternion true_qstft(const SignalQuadrature& sq, int n, double x, double omega, const ImaginaryUnit& I) {
    if (n < 0) throw std::invalid_argument("true_qstft needs n >= 0");
    Quaternion re, im;
    for (std::size_t m = 0; m < sq.size(); ++m) {
        double a = sq.w[m] * window(n, x - sq.t[m]);
        if (a == 0) continue;
        double ph = two_pi * omega * sq.t[m];
        re += (a * std::cos(ph)) * sq.values[m];
        im -= (a * std::sin(ph)) * sq.values[m];
    }
    return std::numbers::sqrt2 * (re + I.times(im));
}

inline Quaternion true_qstft(const Signal& sig, int n, double x, double omega, const ImaginaryUnit& I) {
    return true_qstft(discretize(sig), n, x, omega, I);
}

// Through the polyanalytic Bargmann transform at q = x + I omega:
// e^{-I pi x omega} B^{n+1} phi(conj(q)/sqrt2) e^{-pi |q|^2 / 2}.
inline Quaternion true_qstft_via_bargmann(const Signal& sig, int n, double x, double omega, const ImaginaryUnit& I) {
    Quaternion q = I.lift({x, omega});
    Quaternion b = true_poly_bargmann(sig, n, conj(q) / std::numbers::sqrt2);
    return I.lift(std::polar(1.0, -pi * x * omega)) * b * std::exp(-0.5 * pi * (x * x + omega * omega));
}

inline Quaternion full_qstft(const VectorSignal& v, double x, double omega, const ImaginaryUnit& I) {
    if (v.components.empty()) throw input_error("vector signal needs at least one component");
    Quaternion s;
    for (std::size_t j = 0; j < v.components.size(); ++j) s += true_qstft(v.components[j], int(j), x, omega, I);
    return s;
}

inline Quaternion full_qstft_via_bargmann(const VectorSignal& v, double x, double omega, const ImaginaryUnit& I) {
    Quaternion q = I.lift({x, omega});
    Quaternion b = full_poly_bargmann(v, conj(q) / std::numbers::sqrt2);
    return I.lift(std::polar(1.0, -pi * x * omega)) * b * std::exp(-0.5 * pi * (x * x + omega * omega));
}

// ---------------------------------------------------------------------------
// Fields

namespace detail {

// sqrt2 sum_t w_t e^{-2 pi i omega t} g_x(t) v(t) on the grid, where g_x(t) = kern(x, t).
// T is double (complex output) or Quaternion (output uses I).
template <class T, class Kern>
void field_integral(const FieldGrid& grid, const std::vector<double>& t, const std::vector<double>& w,
                    const std::vector<T>& v, Kern&& kern, const ImaginaryUnit& I, std::vector<std::complex<double>>* out_c,
                    std::vector<Quaternion>* out_q) {
    const int nx = grid.x.count, nw = grid.omega.count;
    const std::size_t nt = t.size();
    std::vector<double> cs(std::size_t(nw) * nt), sn(std::size_t(nw) * nt);
    for (int iw = 0; iw < nw; ++iw)
        for (std::size_t m = 0; m < nt; ++m) {
            double ph = two_pi * grid.omega.at(iw) * t[m];
            cs[iw * nt + m] = std::cos(ph);
            sn[iw * nt + m] = std::sin(ph);
        }
    if (out_c) out_c->assign(grid.size(), 0.0);
    if (out_q) out_q->assign(grid.size(), Quaternion{});
    parallel_for(nx, [&](std::size_t ix) {
        double x = grid.x.at(int(ix));
        std::vector<T> a(nt);
        double peak = 0;
        std::vector<double> mag(nt);
        for (std::size_t m = 0; m < nt; ++m) {
            a[m] = (w[m] * kern(x, t[m])) * v[m];
            mag[m] = magnitude(a[m]);
            peak = std::max(peak, mag[m]);
        }
        if (peak == 0) return;
        std::size_t lo = 0, hi = nt;
        while (lo < hi && mag[lo] <= 1e-18 * peak) ++lo;
        while (hi > lo && mag[hi - 1] <= 1e-18 * peak) --hi;
        for (int iw = 0; iw < nw; ++iw) {
            const double* c = &cs[iw * nt];
            const double* s = &sn[iw * nt];
            T C{}, S{};
            for (std::size_t m = lo; m < hi; ++m) {
                C += c[m] * a[m];
                S += s[m] * a[m];
            }
            std::size_t idx = ix * nw + iw;
            if constexpr (std::is_same_v<T, double>) {
                (*out_c)[idx] = std::numbers::sqrt2 * std::complex<double>(C, -S);
            } else {
                (*out_q)[idx] = std::numbers::sqrt2 * (C - I.times(S));
            }
        }
    });
}

}  // namespace detail

// Complex fields V_{psi_n} psi_k for k < K on a grid. Any Hermite expansion's
// field is then sum_k V_{psi_n} psi_k alpha_k.
class FieldBasis {
public:
    FieldBasis(int n, int K, const FieldGrid& grid) : n_(n), grid_(grid) {
        if (n < 0 || K < 1) throw std::invalid_argument("FieldBasis needs n >= 0, K >= 1");
        grid.validate();
        double T = hermite_support(K - 1);
        int panels = static_cast<int>(std::ceil(2 * T / 0.5));
        Rule r = make_rule(QuadratureSpec{RuleKind::gauss_legendre, -T, T, 32 * panels});
        fields_.resize(K);
        for (int k = 0; k < K; ++k) {
            std::vector<double> v(r.size());
            for (std::size_t m = 0; m < r.size(); ++m) v[m] = window(k, r.nodes[m]);
            detail::field_integral<double>(grid, r.nodes, r.weights, v, [n](double x, double t) { return window(n, x - t); },
                                           ImaginaryUnit::i(), &fields_[k], nullptr);
        }
    }

    int order() const { return n_; }
    int size() const { return static_cast<int>(fields_.size()); }
    const FieldGrid& grid() const { return grid_; }
    const std::vector<std::complex<double>>& field(int k) const { return fields_.at(k); }

    TimeFreqField synthesize(const HermiteExpansion& h, const ImaginaryUnit& I) const {
        h.validate();
        if (h.coeffs.size() > fields_.size()) throw std::invalid_argument("FieldBasis: too many coefficients");
        TimeFreqField f;
        f.grid = grid_;
        f.unit = I;
        f.window_order = n_;
        f.signal_norms = {h.norm()};
        f.values.assign(grid_.size(), Quaternion{});
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            Quaternion re, im;
            for (std::size_t k = 0; k < h.coeffs.size(); ++k) {
                re += fields_[k][i].real() * h.coeffs[k];
                im += fields_[k][i].imag() * h.coeffs[k];
            }
            f.values[i] = re + I.times(im);
        }
        return f;
    }

private:
    int n_;
    FieldGrid grid_;
    std::vector<std::vector<std::complex<double>>> fields_;
};

inline TimeFreqField compute_field(const Signal& sig, int n, const FieldGrid& grid, const ImaginaryUnit& I) {
    if (n < 0) throw input_error("window order must be >= 0");
    grid.validate();
    if (auto* h = std::get_if<HermiteExpansion>(&sig)) return FieldBasis(n, int(h->coeffs.size()), grid).synthesize(*h, I);
    SignalQuadrature sq = discretize(sig);
    TimeFreqField f;
    f.grid = grid;
    f.unit = I;
    f.window_order = n;
    f.signal_norms = {signal_norm(sig)};
    detail::field_integral<Quaternion>(grid, sq.t, sq.w, sq.values, [n](double x, double t) { return window(n, x - t); },
                                       I, nullptr, &f.values);
    return f;
}

// Full-polyanalytic field: sum_j V_{psi_j} phi_j.
inline TimeFreqField compute_full_field(const VectorSignal& v, const FieldGrid& grid, const ImaginaryUnit& I) {
    if (v.components.empty()) throw input_error("vector signal needs at least one component");
    TimeFreqField f;
    f.grid = grid;
    f.unit = I;
    f.window_order = v.order();
    f.full = true;
    f.values.assign(grid.size(), Quaternion{});
    for (std::size_t j = 0; j < v.components.size(); ++j) {
        TimeFreqField c = compute_field(v.components[j], int(j), grid, I);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += c.values[i];
        f.signal_norms.push_back(c.signal_norms[0]);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Inner products and norms (trapezoid over the grid)

inline void check_compatible(const TimeFreqField& F, const TimeFreqField& G) {
    if (!(F.grid == G.grid)) throw input_error("fields live on different grids");
    if (!F.unit.same_as(G.unit)) throw input_error("fields live on different slices");
}

// <F, G> = int conj(G) F dx domega.
inline Quaternion moyal_inner(const TimeFreqField& F, const TimeFreqField& G) {
    check_compatible(F, G);
    Quaternion s;
    for (int ix = 0; ix < F.grid.x.count; ++ix)
        for (int iw = 0; iw < F.grid.omega.count; ++iw) s += F.weight(ix, iw) * (conj(G.at(ix, iw)) * F.at(ix, iw));
    return s;
}

inline double field_norm_sq(const TimeFreqField& F) {
    double s = 0;
    for (int ix = 0; ix < F.grid.x.count; ++ix)
        for (int iw = 0; iw < F.grid.omega.count; ++iw) s += F.weight(ix, iw) * norm_sq(F.at(ix, iw));
    return s;
}

// The same inner product from the eight squared norms of the polarization identity
// (u = G, v = F gives int conj(G) F).
inline Quaternion moyal_inner_polarized(const TimeFreqField& F, const TimeFreqField& G) {
    check_compatible(F, G);
    std::vector<double> w(F.values.size());
    for (int ix = 0; ix < F.grid.x.count; ++ix)
        for (int iw = 0; iw < F.grid.omega.count; ++iw) w[std::size_t(ix) * F.grid.omega.count + iw] = F.weight(ix, iw);
    return polarization_inner(G.values, F.values, w);
}

// Largest |F| on the grid boundary relative to the largest |F| overall.
inline double field_edge_ratio(const TimeFreqField& F) {
    double peak = 0, edge = 0;
    int nx = F.grid.x.count, nw = F.grid.omega.count;
    for (int ix = 0; ix < nx; ++ix)
        for (int iw = 0; iw < nw; ++iw) {
            double a = abs(F.at(ix, iw));
            peak = std::max(peak, a);
            if (ix == 0 || iw == 0 || ix == nx - 1 || iw == nw - 1) edge = std::max(edge, a);
        }
    return peak > 0 ? edge / peak : 0;
}

// ---------------------------------------------------------------------------
// Adjoint and reconstruction

// V*_{psi_n} F(y) = sqrt2 int e^{2 pi I omega y} F(x, omega) psi_n(x - y) dx domega, for each y.
inline std::vector<Quaternion> adjoint_window(const TimeFreqField& F, int n, const std::vector<double>& ys) {
    if (n < 0) throw input_error("window order must be >= 0");
    int nx = F.grid.x.count, nw = F.grid.omega.count;
    std::vector<Quaternion> IF(F.values.size());
    for (std::size_t i = 0; i < F.values.size(); ++i) IF[i] = F.unit.times(F.values[i]);
    std::vector<Quaternion> out(ys.size());
    parallel_for(ys.size(), [&](std::size_t iy) {
        double y = ys[iy];
        std::vector<double> c(nw), s(nw);
        for (int iw = 0; iw < nw; ++iw) {
            double ph = two_pi * F.grid.omega.at(iw) * y;
            c[iw] = F.grid.omega.weight(iw) * std::cos(ph);
            s[iw] = F.grid.omega.weight(iw) * std::sin(ph);
        }
        Quaternion acc;
        for (int ix = 0; ix < nx; ++ix) {
            double g = F.grid.x.weight(ix) * window(n, F.grid.x.at(ix) - y);
            if (g == 0) continue;
            Quaternion row;
            const Quaternion* fr = &F.values[std::size_t(ix) * nw];
            const Quaternion* ir = &IF[std::size_t(ix) * nw];
            for (int iw = 0; iw < nw; ++iw) row += c[iw] * fr[iw] + s[iw] * ir[iw];
            acc += g * row;
        }
        out[iy] = std::numbers::sqrt2 * acc;
    });
    return out;
}

inline void check_window_order(const TimeFreqField& F, int n) {
    if (F.full) throw input_error("full-polyanalytic field needs the vector adjoint");
    if (F.window_order != n)
        throw input_error("field was computed with window order " + std::to_string(F.window_order) + ", not " +
                          std::to_string(n));
}

inline std::vector<Quaternion> adjoint(const TimeFreqField& F, int n, const std::vector<double>& ys) {
    check_window_order(F, n);
    return adjoint_window(F, n, ys);
}

inline Quaternion adjoint(const TimeFreqField& F, int n, double y) { return adjoint(F, n, std::vector<double>{y})[0]; }

// Inversion phi = V* V phi / 2.
inline std::vector<Quaternion> reconstruct(const TimeFreqField& F, int n, const std::vector<double>& ys) {
    std::vector<Quaternion> v = adjoint(F, n, ys);
    for (auto& q : v) q *= 0.5;
    return v;
}

inline Quaternion reconstruct(const TimeFreqField& F, int n, double y) { return reconstruct(F, n, std::vector<double>{y})[0]; }

// (V*_{psi_0} F(y), ..., V*_{psi_n} F(y)) for each y; result[j][iy].
inline std::vector<std::vector<Quaternion>> full_adjoint(const TimeFreqField& F, int n, const std::vector<double>& ys) {
    if (n < 0) throw input_error("window order must be >= 0");
    if (F.full && F.window_order != n)
        throw input_error("field was computed with " + std::to_string(F.window_order + 1) + " windows, not " +
                          std::to_string(n + 1));
    std::vector<std::vector<Quaternion>> out;
    for (int j = 0; j <= n; ++j) out.push_back(adjoint_window(F, j, ys));
    return out;
}

// ---------------------------------------------------------------------------
// Gabor reproducing kernel K(x, w; x', w') = int e^{2 pi I (w' - w) t} psi_n(x' - t) psi_n(x - t) dt

inline Quaternion gabor_kernel(int n, double x, double omega, double xp, double omegap, const ImaginaryUnit& I) {
    double L = hermite_support(n);
    double c = 0.5 * (x + xp);
    double width = 0.5 / std::max(1.0, std::abs(omegap - omega) / 2);
    int panels = static_cast<int>(std::ceil(2 * L / width));
    Rule r = make_rule(QuadratureSpec{RuleKind::gauss_legendre, c - L, c + L, 32 * panels});
    std::complex<double> s = 0;
    for (std::size_t m = 0; m < r.size(); ++m) {
        double t = r.nodes[m];
        s += r.weights[m] * window(n, xp - t) * window(n, x - t) * std::polar(1.0, two_pi * (omegap - omega) * t);
    }
    return I.lift(s);
}

// K(x, w; x', w') for all (x, w) on the grid at a fixed (x', w').
inline TimeFreqField gabor_kernel_field(int n, double xp, double omegap, const FieldGrid& grid, const ImaginaryUnit& I) {
    double L = hermite_support(n);
    int panels = static_cast<int>(std::ceil(2 * L / 0.5));
    Rule r = make_rule(QuadratureSpec{RuleKind::gauss_legendre, xp - L, xp + L, 32 * panels});
    // e^{2 pi I w' t} psi_n(x' - t) / sqrt2 carried as a quaternion so the field kernel supplies e^{-2 pi I w t} psi_n(x - t).
    std::vector<Quaternion> v(r.size());
    for (std::size_t m = 0; m < r.size(); ++m)
        v[m] = I.lift(std::polar(window(n, xp - r.nodes[m]) / std::numbers::sqrt2, two_pi * omegap * r.nodes[m]));
    TimeFreqField f;
    f.grid = grid;
    f.unit = I;
    f.window_order = n;
    f.signal_norms = {1.0};
    detail::field_integral<Quaternion>(grid, r.nodes, r.weights, v, [n](double x, double t) { return window(n, x - t); }, I,
                                       nullptr, &f.values);
    return f;
}

// int conj(K(x, w; x', w')) F(x, w) dx dw.
inline Quaternion gabor_reproduce(const TimeFreqField& F, const TimeFreqField& K) { return moyal_inner(F, K); }

// ---------------------------------------------------------------------------
// Lieb-type Lp bound

struct LiebReport {
    double value = 0;  // int |F|^p
    double bound = 0;
    bool satisfied = false;
};

// (2^{p+1}/p) ||phi||^p, or (2^{p+1}/p) (n+1)^{p-1} ||phi_vec||^p for full fields.
inline LiebReport lieb_lp(const TimeFreqField& F, double p) {
    if (!(p >= 2) || !std::isfinite(p)) throw input_error("Lieb bound needs 2 <= p < inf");
    LiebReport r;
    for (int ix = 0; ix < F.grid.x.count; ++ix)
        for (int iw = 0; iw < F.grid.omega.count; ++iw) r.value += F.weight(ix, iw) * std::pow(abs(F.at(ix, iw)), p);
    r.bound = std::pow(2.0, p + 1) / p * std::pow(F.signal_norm(), p);
    if (F.full) r.bound *= std::pow(F.window_order + 1.0, p - 1);
    r.satisfied = r.value <= r.bound * (1 + 1e-12);
    return r;
}

// ---------------------------------------------------------------------------
// Uncertainty: area lower bounds for sets carrying 1 - eps of the energy

// Open disc; a zero radius holds no grid node.
struct Disc {
    double x = 0, omega = 0, radius = 1;
};
// Infinite bounds are allowed; the whole plane is a rectangle with infinite sides.
struct Rect {
    double x0 = -std::numeric_limits<double>::infinity(), x1 = std::numeric_limits<double>::infinity();
    double omega0 = -std::numeric_limits<double>::infinity(), omega1 = std::numeric_limits<double>::infinity();
};
using SetSpec = std::variant<Disc, Rect>;

inline double set_area(const SetSpec& U) {
    if (auto* d = std::get_if<Disc>(&U)) {
        if (!(d->radius >= 0)) throw input_error("disc radius must be >= 0");
        return pi * d->radius * d->radius;
    }
    auto& r = std::get<Rect>(U);
    if (!(r.x1 >= r.x0) || !(r.omega1 >= r.omega0)) throw input_error("rectangle bounds are reversed");
    return (r.x1 - r.x0) * (r.omega1 - r.omega0);
}

inline bool set_contains(const SetSpec& U, double x, double omega) {
    if (auto* d = std::get_if<Disc>(&U)) {
        double dx = x - d->x, dw = omega - d->omega;
        return dx * dx + dw * dw < d->radius * d->radius;
    }
    auto& r = std::get<Rect>(U);
    return x >= r.x0 && x <= r.x1 && omega >= r.omega0 && omega <= r.omega1;
}

struct UncertaintyReport {
    double mass = 0;     // int_U |F|^2
    double epsilon = 0;  // 1 - mass / total, clamped to [0, 1]
    double area = 0;
    double bound = 0;
    bool satisfied = false;
};

// Without p: |U| >= (1 - eps)/2, or (1 - eps)/(2(n+1)^2) for full fields.
// With p > 2: |U| >= (2^{p+1}/p)^{-2/(p-2)} (1 - eps)^{p/(p-2)}, times (n+1)^{(2-3p)/(p-2)} for full fields.
inline UncertaintyReport uncertainty_check(const TimeFreqField& F, const SetSpec& U, std::optional<double> p = std::nullopt) {
    for (double nv : F.signal_norms)
        if (std::abs(nv - 1) > 1e-6) throw input_error("uncertainty bounds need unit-norm signals");
    if (p && (!(*p > 2) || !std::isfinite(*p))) throw input_error("uncertainty bound needs 2 < p < inf");
    UncertaintyReport r;
    for (int ix = 0; ix < F.grid.x.count; ++ix)
        for (int iw = 0; iw < F.grid.omega.count; ++iw)
            if (set_contains(U, F.grid.x.at(ix), F.grid.omega.at(iw))) r.mass += F.weight(ix, iw) * norm_sq(F.at(ix, iw));
    double total = 2 * F.signal_norm() * F.signal_norm();
    r.epsilon = std::clamp(1 - r.mass / total, 0.0, 1.0);
    r.area = set_area(U);
    double n1 = F.window_order + 1.0;
    if (!p) {
        r.bound = (1 - r.epsilon) / 2;
        if (F.full) r.bound /= n1 * n1;
    } else {
        double P = *p;
        r.bound = std::pow(std::pow(2.0, P + 1) / P, -2 / (P - 2)) * std::pow(1 - r.epsilon, P / (P - 2));
        if (F.full) r.bound *= std::pow(n1, (2 - 3 * P) / (P - 2));
    }
    r.satisfied = r.area >= r.bound - 1e-12;
    return r;
}

}  // namespace qtfa
