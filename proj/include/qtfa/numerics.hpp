#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "quaternion.hpp"

namespace qtfa {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2 * std::numbers::pi;

// Bad user input (files, flags, shapes). The CLI maps it to exit code 2.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical quality check failed (non-convergence, truncation). Exit code 3.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline double magnitude(const Quaternion& v) { return abs(v); }

// Relative tolerance ladder: algebraic identities, two numerical routes of one
// object, quadrature of integrals, and identities evaluated on sampled grids.
struct TolerancePolicy {
    double rel_identity = 1e-10;
    double rel_cross_route = 1e-6;
    double rel_quadrature = 1e-4;
    double rel_grid = 1e-3;

    void validate() const {
        if (!(rel_identity > 0 && rel_identity < rel_cross_route && rel_cross_route < rel_quadrature &&
              rel_quadrature <= rel_grid))
            throw input_error("tolerances must satisfy identity < cross_route < quadrature <= grid");
    }
};

// ---------------------------------------------------------------------------
// Threads

// Worker count: QTFA_THREADS if set and positive, else hardware concurrency.
inline unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QTFA_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, 1024));
    }
    return hw;
}

// Runs f(i) for i in [0, count). Each index is computed independently, so
// results do not depend on the number of workers.
template <class F>
void parallel_for(std::size_t count, F&& f) {
    unsigned nt = static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    std::size_t chunk = (count + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
                for (std::size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Quadrature rules

struct Rule {
    std::vector<double> nodes, weights;
    std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
    // P_n(x) and P_n'(x)
    auto legendre = [n](double x) {
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1)};
    };
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double dp = legendre(x).second;
        double w = 2 / ((1 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0;
    return r;
}

inline const Rule& gauss_legendre_32() {
    static const Rule r = gauss_legendre(32);
    return r;
}

enum class RuleKind { gauss_legendre, trapezoid };

// Rule on a finite interval. Gauss-Legendre uses 32-node panels; the node
// count is rounded up to a whole number of panels.
struct QuadratureSpec {
    RuleKind kind = RuleKind::gauss_legendre;
    double a = -1, b = 1;
    int nodes = 64;

    void validate() const {
        if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) throw input_error("quadrature needs finite a < b");
        if (nodes < 16) throw input_error("quadrature needs at least 16 nodes");
    }
    // Twice the nodes actually used, so panel rounding cannot hide the refinement.
    QuadratureSpec doubled() const {
        int used = kind == RuleKind::gauss_legendre ? ((nodes + 31) / 32) * 32 : nodes;
        return {kind, a, b, 2 * used};
    }
};

inline Rule make_rule(const QuadratureSpec& s) {
    s.validate();
    Rule r;
    if (s.kind == RuleKind::trapezoid) {
        int n = s.nodes;
        double h = (s.b - s.a) / (n - 1);
        r.nodes.resize(n);
        r.weights.assign(n, h);
        for (int i = 0; i < n; ++i) r.nodes[i] = s.a + i * h;
        r.weights.front() = r.weights.back() = h / 2;
        return r;
    }
    const Rule& g = gauss_legendre_32();
    int panels = (s.nodes + 31) / 32;
    double len = (s.b - s.a) / panels;
    r.nodes.reserve(panels * 32);
    r.weights.reserve(panels * 32);
    for (int p = 0; p < panels; ++p) {
        double lo = s.a + p * len;
        for (std::size_t i = 0; i < g.size(); ++i) {
            r.nodes.push_back(lo + 0.5 * len * (g.nodes[i] + 1));
            r.weights.push_back(0.5 * len * g.weights[i]);
        }
    }
    return r;
}

template <class T>
struct QuadratureResult {
    T value{};
    double error_estimate = 0;  // |I(2N) - I(N)|
    bool converged = true;
};

template <class F>
auto apply_rule(F&& f, const Rule& r) {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    T acc{};
    for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * f(r.nodes[i]);
    return acc;
}

// Integrates f over [spec.a, spec.b]; the error estimate comes from doubling
// the nodes, and convergence means the change is below rel_tol of the value.
template <class F>
auto integrate_1d(F&& f, const QuadratureSpec& spec, double rel_tol = 1e-4) {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    T coarse = apply_rule(f, make_rule(spec));
    T fine = apply_rule(f, make_rule(spec.doubled()));
    QuadratureResult<T> res;
    res.value = fine;
    res.error_estimate = magnitude(fine - coarse);
    res.converged = res.error_estimate <= rel_tol * std::max(magnitude(fine), 1e-300) || res.error_estimate < 1e-300;
    return res;
}

// Tensor-product rule on a rectangle.
struct TensorSpec {
    QuadratureSpec x, y;
    TensorSpec doubled() const { return {x.doubled(), y.doubled()}; }
};

// Disc of given radius around the origin: Gauss-Legendre in r, trapezoid
// (periodic) in angle. f receives Cartesian (u, v); the Jacobian is included.
struct PolarSpec {
    double radius = 1;
    int radial_nodes = 400;
    int angular_nodes = 256;

    void validate() const {
        if (!(radius > 0) || !std::isfinite(radius)) throw input_error("polar quadrature needs a finite radius > 0");
        if (radial_nodes < 16 || angular_nodes < 16) throw input_error("polar quadrature needs at least 16 nodes");
    }
    PolarSpec doubled() const { return {radius, 2 * radial_nodes, 2 * angular_nodes}; }
};

// Flattened 2D rule: points (u, v) with weights.
struct Rule2D {
    std::vector<double> u, v, weights;
    std::size_t size() const { return u.size(); }
};

inline Rule2D make_rule(const TensorSpec& s) {
    Rule rx = make_rule(s.x), ry = make_rule(s.y);
    Rule2D r;
    for (std::size_t i = 0; i < rx.size(); ++i)
        for (std::size_t j = 0; j < ry.size(); ++j) {
            r.u.push_back(rx.nodes[i]);
            r.v.push_back(ry.nodes[j]);
            r.weights.push_back(rx.weights[i] * ry.weights[j]);
        }
    return r;
}

inline Rule2D make_rule(const PolarSpec& s) {
    s.validate();
    Rule rr = make_rule(QuadratureSpec{RuleKind::gauss_legendre, 0, s.radius, s.radial_nodes});
    Rule2D r;
    int na = s.angular_nodes;
    double dth = two_pi / na;
    std::vector<double> c(na), sn(na);
    for (int a = 0; a < na; ++a) {
        c[a] = std::cos(a * dth);
        sn[a] = std::sin(a * dth);
    }
    for (std::size_t i = 0; i < rr.size(); ++i)
        for (int a = 0; a < na; ++a) {
            r.u.push_back(rr.nodes[i] * c[a]);
            r.v.push_back(rr.nodes[i] * sn[a]);
            r.weights.push_back(rr.weights[i] * rr.nodes[i] * dth);
        }
    return r;
}

template <class F>
auto apply_rule(F&& f, const Rule2D& r) {
    using T = std::decay_t<std::invoke_result_t<F&, double, double>>;
    T acc{};
    for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * f(r.u[i], r.v[i]);
    return acc;
}

template <class F, class Spec>
    requires std::is_same_v<Spec, TensorSpec> || std::is_same_v<Spec, PolarSpec>
auto integrate_2d(F&& f, const Spec& spec, double rel_tol = 1e-4) {
    using T = std::decay_t<std::invoke_result_t<F&, double, double>>;
    T coarse = apply_rule(f, make_rule(spec));
    T fine = apply_rule(f, make_rule(spec.doubled()));
    QuadratureResult<T> res;
    res.value = fine;
    res.error_estimate = magnitude(fine - coarse);
    res.converged = res.error_estimate <= rel_tol * std::max(magnitude(fine), 1e-300) || res.error_estimate < 1e-300;
    return res;
}

// ---------------------------------------------------------------------------
// Wirtinger derivative d/dz = (d/du - I d/dv)/2 by finite differences.
// Fourth-order central stencil (+-h, +-2h) with h = 2e-3 (|z| + 1), nested k times.

inline constexpr double wirtinger_step_scale = 2e-3;

namespace detail {

template <class T, class F, class TimesI>
T wirtinger_nested(const F& f, double u, double v, int k, double h, const TimesI& times_i) {
    if (k == 0) return f(u, v);
    auto g = [&](double uu, double vv) { return wirtinger_nested<T>(f, uu, vv, k - 1, h, times_i); };
    T du = (8.0 * (g(u + h, v) - g(u - h, v)) - (g(u + 2 * h, v) - g(u - 2 * h, v))) / (12 * h);
    T dv = (8.0 * (g(u, v + h) - g(u, v - h)) - (g(u, v + 2 * h) - g(u, v - 2 * h))) / (12 * h);
    return 0.5 * (du - times_i(dv));
}

}  // namespace detail

// f: std::complex<double> -> std::complex<double>, not necessarily holomorphic.
template <class F>
std::complex<double> wirtinger_derivative(F&& f, std::complex<double> z, int k = 1) {
    if (k < 0) throw std::invalid_argument("wirtinger_derivative needs k >= 0");
    double h = wirtinger_step_scale * (std::abs(z) + 1);
    auto g = [&](double u, double v) -> std::complex<double> { return f(std::complex<double>(u, v)); };
    auto times_i = [](const std::complex<double>& c) { return std::complex<double>(-c.imag(), c.real()); };
    return detail::wirtinger_nested<std::complex<double>>(g, z.real(), z.imag(), k, h, times_i);
}

// Quaternion-valued f evaluated along the slice C_I through q; I multiplies from the left.
template <class F>
Quaternion wirtinger_derivative(F&& f, const Quaternion& q, const ImaginaryUnit& I, int k = 1) {
    if (k < 0) throw std::invalid_argument("wirtinger_derivative needs k >= 0");
    std::complex<double> z = on_slice(q, I);
    double h = wirtinger_step_scale * (std::abs(z) + 1);
    auto g = [&](double u, double v) -> Quaternion { return f(I.lift({u, v})); };
    auto times_i = [&](const Quaternion& c) { return I.times(c); };
    return detail::wirtinger_nested<Quaternion>(g, z.real(), z.imag(), k, h, times_i);
}

// ---------------------------------------------------------------------------
// Small helpers

inline double factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    double r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

// Generalized binomial C(a, k) = a (a-1) ... (a-k+1) / k! by the multiplicative recurrence.
inline double binomial(double a, int k) {
    if (k < 0) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r *= (a - k + i) / i;
    return r;
}

inline double relative_error(double measured, double expected) {
    double d = std::abs(measured - expected);
    double s = std::abs(expected);
    return s > 0 ? d / s : d;
}

}  // namespace qtfa
