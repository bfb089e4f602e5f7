#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hermite.hpp"
#include "numerics.hpp"
#include "quaternion.hpp"

namespace qtfa {

inline constexpr std::size_t max_hermite_coeffs = 64;

// phi(t) = sum_k psi_k(t) alpha_k (coefficients multiply on the right).
struct HermiteExpansion {
    std::vector<Quaternion> coeffs;

    void validate() const {
        if (coeffs.empty() || coeffs.size() > max_hermite_coeffs)
            throw input_error("hermite expansion needs 1..64 coefficients");
    }
    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    Quaternion operator()(double t) const {
        std::vector<double> psi = windows(order(), t);
        Quaternion s;
        for (std::size_t k = 0; k < coeffs.size(); ++k) s += psi[k] * coeffs[k];
        return s;
    }
    double norm_sq() const {
        double s = 0;
        for (auto& c : coeffs) s += qtfa::norm_sq(c);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }
};

// Uniform samples values[m] = phi(t0 + m dt).
struct SampledSignal {
    double t0 = 0, dt = 1;
    std::vector<Quaternion> values;

    void validate() const {
        if (values.size() < 16) throw input_error("sampled signal needs at least 16 samples");
        if (!(dt > 0) || !std::isfinite(dt) || !std::isfinite(t0)) throw input_error("sampled signal needs finite t0, dt > 0");
    }
    double t(std::size_t m) const { return t0 + m * dt; }
    double norm_sq() const {
        double s = 0;
        for (std::size_t m = 0; m < values.size(); ++m)
            s += ((m == 0 || m + 1 == values.size()) ? 0.5 : 1.0) * qtfa::norm_sq(values[m]);
        return s * dt;
    }
    double norm() const { return std::sqrt(norm_sq()); }
};

using Signal = std::variant<HermiteExpansion, SampledSignal>;

struct VectorSignal {
    std::vector<Signal> components;
    int order() const { return static_cast<int>(components.size()) - 1; }
};

inline double signal_norm(const Signal& s) {
    return std::visit([](const auto& v) { return v.norm(); }, s);
}

inline double vector_norm(const VectorSignal& v) {
    double s = 0;
    for (auto& c : v.components) s += signal_norm(c) * signal_norm(c);
    return std::sqrt(s);
}

// The measure phi(t) dt as weighted nodes.
struct SignalQuadrature {
    std::vector<double> t, w;
    std::vector<Quaternion> values;
    std::size_t size() const { return t.size(); }
};

// Truncation half-width for Hermite content up to order n_max.
inline double hermite_support(int n_max) { return 4.0 + std::sqrt(double(std::max(n_max, 0))); }

// Composite Gauss-Legendre over [-T, T], panels of width <= 0.5.
inline SignalQuadrature discretize(const HermiteExpansion& h) {
    h.validate();
    double T = hermite_support(h.order());
    int panels = static_cast<int>(std::ceil(2 * T / 0.5));
    Rule r = make_rule(QuadratureSpec{RuleKind::gauss_legendre, -T, T, 32 * panels});
    SignalQuadrature q;
    q.t = r.nodes;
    q.w = r.weights;
    q.values.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) q.values[i] = h(r.nodes[i]);
    return q;
}

// Trapezoid over the sample points.
inline SignalQuadrature discretize(const SampledSignal& s) {
    s.validate();
    SignalQuadrature q;
    std::size_t n = s.values.size();
    q.t.resize(n);
    q.w.assign(n, s.dt);
    q.w.front() = q.w.back() = 0.5 * s.dt;
    for (std::size_t m = 0; m < n; ++m) q.t[m] = s.t(m);
    q.values = s.values;
    return q;
}

inline SignalQuadrature discretize(const Signal& s) {
    return std::visit([](const auto& v) { return discretize(v); }, s);
}

// Projection onto psi_0..psi_{K-1} by the trapezoid rule on the samples.
inline HermiteExpansion project(const SampledSignal& s, int K = static_cast<int>(max_hermite_coeffs)) {
    SignalQuadrature q = discretize(s);
    HermiteExpansion h;
    h.coeffs.assign(K, Quaternion{});
    for (std::size_t m = 0; m < q.size(); ++m) {
        std::vector<double> psi = windows(K - 1, q.t[m]);
        for (int k = 0; k < K; ++k) h.coeffs[k] += (q.w[m] * psi[k]) * q.values[m];
    }
    return h;
}

inline HermiteExpansion as_expansion(const Signal& s) {
    if (auto* h = std::get_if<HermiteExpansion>(&s)) return *h;
    return project(std::get<SampledSignal>(s));
}

// Warns when a sampled signal does not decay at the ends of its window.
inline std::optional<std::string> truncation_warning(const Signal& s, double threshold = 1e-8) {
    auto* sp = std::get_if<SampledSignal>(&s);
    if (!sp || sp->values.empty()) return std::nullopt;
    double peak = 0;
    for (auto& v : sp->values) peak = std::max(peak, abs(v));
    double tail = std::max(abs(sp->values.front()), abs(sp->values.back()));
    if (peak > 0 && tail > threshold * peak)
        return "signal tails reach " + std::to_string(tail / peak) + " of the peak; integrals are truncated";
    return std::nullopt;
}

}  // namespace qtfa
