#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bargmann.hpp"
#include "hermite.hpp"
#include "numerics.hpp"
#include "qstft.hpp"
#include "quaternion.hpp"
#include "random.hpp"
#include "signal.hpp"

namespace qtfa::verify {

using json = nlohmann::json;

// One checked identity. comparison: "abs" (measured error <= tolerance, expected 0),
// "rel" (|measured - expected| <= tolerance |expected|), "le" (measured <= expected).
struct Case {
    std::string identity;
    std::string anchor;
    double measured = 0, expected = 0, tolerance = 0;
    std::string comparison;
    bool pass = false;
};

inline Case abs_case(std::string id, std::string anchor, double err, double tol) {
    return {std::move(id), std::move(anchor), err, 0.0, tol, "abs", err <= tol};
}
inline Case rel_case(std::string id, std::string anchor, double measured, double expected, double tol) {
    return {std::move(id), std::move(anchor), measured, expected, tol, "rel",
            std::abs(measured - expected) <= tol * std::abs(expected)};
}
inline Case le_case(std::string id, std::string anchor, double measured, double bound) {
    return {std::move(id), std::move(anchor), measured, bound, 0.0, "le", measured <= bound};
}

struct Report {
    std::string suite;
    std::vector<Case> cases;

    bool pass() const {
        return std::all_of(cases.begin(), cases.end(), [](const Case& c) { return c.pass; });
    }
    void add(Case c) { cases.push_back(std::move(c)); }

    json to_json() const {
        json cs = json::array();
        for (auto& c : cases)
            cs.push_back({{"identity", c.identity},
                          {"paper_anchor", c.anchor},
                          {"measured", c.measured},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance},
                          {"comparison", c.comparison},
                          {"pass", c.pass}});
        return {{"suite", suite}, {"pass", pass()}, {"cases", cs}};
    }
};

struct Options {
    std::uint64_t seed = 1;
    TolerancePolicy tol;
};

namespace detail {

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = (n == 1) ? a : a + (b - a) * i / (n - 1);
    return v;
}

// Fourth-order central difference.
template <class F>
double derivative(const F& f, double x, double h) {
    return (8 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12 * h);
}

inline ImaginaryUnit tilted_unit() { return ImaginaryUnit::from(1, -2, 2); }

// sum_k conj(beta_k) alpha_k, the L2 inner product <phi, varphi> of two expansions.
inline Quaternion coeff_inner(const HermiteExpansion& phi, const HermiteExpansion& vphi) {
    Quaternion s;
    for (std::size_t k = 0; k < std::min(phi.coeffs.size(), vphi.coeffs.size()); ++k) s += conj(vphi.coeffs[k]) * phi.coeffs[k];
    return s;
}

inline SampledSignal sample(const HermiteExpansion& h, double T, double dt) {
    SampledSignal s;
    s.t0 = -T;
    s.dt = dt;
    int n = static_cast<int>(std::round(2 * T / dt)) + 1;
    for (int m = 0; m < n; ++m) s.values.push_back(h(s.t(m)));
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Report hermite_suite(const Options& o) {
    Report r{"hermite", {}};
    Rng rng(o.seed * 1000 + 1);
    const double nus[] = {1.0, two_pi};

    double worst = 0;
    for (double nu : nus)
        for (int n = 0; n <= 12; ++n) {
            auto xs = detail::linspace(-2, 2, 21);
            for (int i = 0; i < 5; ++i) xs.push_back(rng.uniform(-2, 2));
            double scale = 0;
            for (double x : xs) scale = std::max(scale, std::abs(hermite_poly(n, nu, x)));
            for (double x : xs) worst = std::max(worst, std::abs(hermite_poly(n, nu, x) - hermite_poly_explicit(n, nu, x)) / scale);
        }
    r.add(abs_case("recurrence equals closed sum (n<=12, nu in {1,2pi})", "weighted Hermite recurrence / explicit sum", worst,
                   o.tol.rel_identity));

    worst = 0;
    for (double nu : nus)
        for (int n = 1; n <= 10; ++n) {
            std::vector<double> xs;
            for (int i = 0; i < 20; ++i) xs.push_back(rng.uniform(-2, 2));
            double scale = 0;
            for (double x : xs) scale = std::max(scale, std::abs(hermite_poly_derivative(n, nu, x)));
            for (double x : xs) {
                double fd = detail::derivative([&](double t) { return hermite_poly(n, nu, t); }, x, 1e-3 * (1 + std::abs(x)));
                worst = std::max(worst, std::abs(fd - hermite_poly_derivative(n, nu, x)) / scale);
            }
        }
    r.add(abs_case("derivative 2 nu n H_{n-1} matches finite differences (n<=10)", "Hermite derivative identity", worst,
                   o.tol.rel_cross_route));

    worst = 0;
    for (double nu : nus)
        for (int n = 0; n <= 10; ++n) {
            double L = std::sqrt(2.0 * (2 * n + 1) / nu) + 6 / std::sqrt(nu);
            auto res = integrate_1d(
                [&](double x) {
                    double h = hermite_poly(n, nu, x) * std::exp(-0.5 * nu * x * x);
                    return h * h;
                },
                QuadratureSpec{RuleKind::gauss_legendre, -L, L, 256});
            worst = std::max(worst, relative_error(res.value, hermite_norm_sq(n, nu)));
        }
    r.add(abs_case("||h_n||^2 = 2^n nu^n n! sqrt(pi/nu) by quadrature (n<=10)", "Hermite function norm", worst,
                   o.tol.rel_cross_route));

    worst = 0;
    {
        Rule rule = make_rule(QuadratureSpec{RuleKind::gauss_legendre, -8, 8, 512});
        for (int j = 0; j <= 10; ++j)
            for (int k = 0; k <= j; ++k) {
                double s = apply_rule([&](double t) { return window(j, t) * window(k, t); }, rule);
                worst = std::max(worst, std::abs(s - (j == k ? 1.0 : 0.0)));
            }
    }
    r.add(abs_case("windows psi_n are orthonormal (n<=10)", "normalized Hermite window", worst, o.tol.rel_cross_route));

    worst = 0;
    for (double nu : nus)
        for (int i = 0; i < 10; ++i) {
            double x = rng.uniform(-1, 1), lam = rng.uniform(-0.5, 0.5);
            double exact = std::exp(-nu * lam * lam + 2 * nu * x * lam);
            worst = std::max(worst, relative_error(generating_partial_sum(80, nu, x, lam), exact));
        }
    r.add(abs_case("generating function partial sums (80 terms)", "Hermite generating function", worst, o.tol.rel_identity));

    worst = 0;
    for (double gamma : {0.0, 0.5, 2.0})
        for (int k = 0; k <= 5; ++k)
            for (int j = 0; j <= k; ++j) {
                // t = s^2 removes the t^gamma endpoint singularity.
                auto res = integrate_1d(
                    [&](double s) {
                        double t = s * s;
                        return 2 * s * std::pow(t, gamma) * std::exp(-t) * laguerre(k, gamma, t) * laguerre(j, gamma, t);
                    },
                    QuadratureSpec{RuleKind::gauss_legendre, 0, 10, 256});
                double expected = j == k ? std::exp(std::lgamma(gamma + k + 1)) / factorial(k) : 0.0;
                double scale = std::exp(std::lgamma(gamma + k + 1)) / factorial(k);
                worst = std::max(worst, std::abs(res.value - expected) / scale);
            }
    r.add(abs_case("Laguerre orthogonality with weight t^gamma e^{-t}", "Laguerre orthogonality", worst, o.tol.rel_cross_route));
    return r;
}

// ---------------------------------------------------------------------------

inline Report complex_hermite_suite(const Options& o) {
    Report r{"complex-hermite", {}};
    Rng rng(o.seed * 1000 + 2);

    double worst = 0;
    for (double alpha : {1.0, two_pi}) {
        Rule2D rule = make_rule(PolarSpec{std::sqrt(60 / alpha), 96, 32});
        const int M = 4;
        std::vector<std::vector<std::complex<double>>> vals;
        std::vector<double> norms;
        for (int m = 0; m <= M; ++m)
            for (int p = 0; p <= M; ++p) {
                std::vector<std::complex<double>> v(rule.size());
                for (std::size_t i = 0; i < rule.size(); ++i) v[i] = complex_hermite(m, p, alpha, {rule.u[i], rule.v[i]});
                vals.push_back(std::move(v));
                norms.push_back(pi * std::pow(alpha, p + m - 1) * factorial(m) * factorial(p));
            }
        for (std::size_t a = 0; a < vals.size(); ++a)
            for (std::size_t b = 0; b <= a; ++b) {
                std::complex<double> s = 0;
                for (std::size_t i = 0; i < rule.size(); ++i) {
                    double wt = rule.weights[i] * std::exp(-alpha * (rule.u[i] * rule.u[i] + rule.v[i] * rule.v[i]));
                    s += wt * std::conj(vals[b][i]) * vals[a][i];
                }
                double expected = a == b ? norms[a] : 0.0;
                worst = std::max(worst, std::abs(s - expected) / std::sqrt(norms[a] * norms[b]));
            }
    }
    r.add(abs_case("orthogonality pi alpha^{p+m-1} m! p! (m,p<=4, alpha in {1,2pi})", "complex Hermite orthogonality", worst,
                   o.tol.rel_quadrature));

    worst = 0;
    for (int i = 0; i < 40; ++i) {
        int m = rng.integer(0, 5), p = m + rng.integer(0, 5);
        double alpha = i % 2 ? 1.0 : two_pi;
        double rad = rng.uniform(0, 1.5), th = rng.uniform(-pi, pi);
        auto a = complex_hermite(m, p, alpha, std::polar(rad, th));
        auto b = complex_hermite_polar(m, p, alpha, rad, th);
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::pow(alpha, p) * factorial(m) * std::pow(rad, p - m) + 1e-300));
    }
    r.add(abs_case("polar Laguerre form equals closed sum (p>=m)", "complex Hermite polar form", worst, o.tol.rel_identity));

    worst = 0;
    for (int i = 0; i < 30; ++i) {
        ImaginaryUnit I = rng.unit();
        std::complex<double> z{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        int m = rng.integer(0, 4), p = rng.integer(0, 4);
        Quaternion qv = complex_hermite(m, p, two_pi, I.lift(z));
        Quaternion cv = I.lift(complex_hermite(m, p, two_pi, z));
        worst = std::max(worst, abs(qv - cv) / std::max(abs(cv), 1.0));
    }
    r.add(abs_case("quaternion evaluation equals complex evaluation on the slice", "slice-wise complex Hermite", worst,
                   o.tol.rel_identity));

    worst = 0;
    for (int i = 0; i < 10; ++i) {
        Quaternion q = rng.quaternion();
        worst = std::max(worst, abs(complex_hermite(1, 0, two_pi, q) - two_pi * conj(q)) / (two_pi * abs(q)));
    }
    r.add(abs_case("H_{1,0}^{2pi}(q) = 2 pi conj(q)", "complex Hermite low orders", worst, o.tol.rel_identity));
    return r;
}

// ---------------------------------------------------------------------------

inline Report bargmann_suite(const Options& o) {
    Report r{"bargmann", {}};
    Rng rng(o.seed * 1000 + 3);
    const ImaginaryUnit slices[2] = {ImaginaryUnit::i(), detail::tilted_unit()};
    const int K = 8, nmax = 3;

    {
        HermiteExpansion phi = rng.expansion(K);
        SignalQuadrature sq = discretize(Signal(phi));
        SignalQuadrature ss = discretize(Signal(detail::sample(phi, 8, 1.0 / 64)));
        double worst = 0, worst_s = 0;
        for (auto& I : slices)
            for (int i = 0; i < 20; ++i) {
                Quaternion q = rng.on_slice(I, 1.2);
                for (int n = 0; n <= nmax; ++n) {
                    Quaternion a = true_poly_bargmann(phi, n, q);
                    double scale = std::max(abs(a), phi.norm());
                    worst = std::max(worst, abs(a - true_poly_bargmann_closed(sq, n, q)) / scale);
                    worst_s = std::max(worst_s, abs(a - true_poly_bargmann_closed(ss, n, q)) / scale);
                }
            }
        r.add(abs_case("coefficient route equals integral route (n<=3, K=8, 2 slices)", "true-poly Bargmann dual route", worst,
                       o.tol.rel_cross_route));
        r.add(abs_case("integral route on uniform samples equals coefficient route", "true-poly Bargmann dual route",
                       worst_s, o.tol.rel_cross_route));
    }

    {
        double worst = 0;
        for (int s = 0; s < 10; ++s) {
            HermiteExpansion phi = rng.expansion(K);
            const ImaginaryUnit& I = slices[s % 2];
            int n = s % (nmax + 1);
            TruePolyBasis B(n, K);
            auto f = [&](const Quaternion& q) { return B(phi.coeffs, q); };
            auto res = fock_inner(f, f, I, default_fock_spec(n, K));
            worst = std::max(worst, relative_error(res.value.w, phi.norm_sq()));
        }
        r.add(abs_case("true-poly Bargmann is an isometry into the Fock space", "true-poly Bargmann isometry", worst,
                       o.tol.rel_quadrature));
    }

    {
        double worst = 0;
        HermiteExpansion phi = rng.expansion(K), vphi = rng.expansion(K);
        for (int j = 0; j <= nmax; ++j)
            for (int m = j + 1; m <= nmax; ++m) {
                TruePolyBasis Bj(j, K), Bm(m, K);
                auto res = fock_inner([&](const Quaternion& q) { return Bj(phi.coeffs, q); },
                                      [&](const Quaternion& q) { return Bm(vphi.coeffs, q); }, slices[(j + m) % 2],
                                      default_fock_spec(m, K));
                worst = std::max(worst, abs(res.value) / (phi.norm() * vphi.norm()));
            }
        r.add(abs_case("ranges of different orders are orthogonal", "true-poly Fock orthogonality", worst, o.tol.rel_quadrature));
    }

    {
        double worst = 0, worst_full = 0;
        auto grid = detail::linspace(-2, 2, 20);
        for (int s = 0; s < 3; ++s) {
            HermiteExpansion phi = rng.expansion(K);
            VectorSignal vs;
            for (int j = 0; j <= nmax; ++j) vs.components.push_back(rng.expansion(K));
            double vn = vector_norm(vs);
            for (auto& I : slices)
                for (double u : grid)
                    for (double v : grid) {
                        Quaternion q = I.lift({u, v});
                        for (int n = 0; n <= nmax; ++n)
                            worst = std::max(worst, abs(true_poly_bargmann(phi, n, q)) / true_poly_bound(q, phi.norm()));
                        worst_full = std::max(worst_full, abs(full_poly_bargmann(vs, q)) / full_poly_bound(q, nmax, vn));
                    }
        }
        r.add(le_case("|B^{n+1} phi(q)| <= sqrt2 e^{pi|q|^2} ||phi|| on 20x20 grids (ratio)", "true-poly growth bound", worst, 1.0));
        r.add(le_case("|full-poly(q)| <= sqrt(2(n+1)) e^{pi|q|^2} ||phi|| on 20x20 grids (ratio)", "full-poly growth bound",
                      worst_full, 1.0));
    }

    {
        double worst = 0;
        for (int n = 0; n <= nmax; ++n) {
            VectorSignal vs;
            for (int j = 0; j <= n; ++j) vs.components.push_back(rng.expansion(K));
            const ImaginaryUnit& I = slices[n % 2];
            auto f = [&](const Quaternion& q) { return full_poly_bargmann(vs, q); };
            auto res = fock_inner(f, f, I, default_fock_spec(n, K));
            worst = std::max(worst, relative_error(res.value.w, vector_norm(vs) * vector_norm(vs)));
        }
        r.add(abs_case("full-poly Bargmann is an isometry (n<=3)", "full-poly Bargmann isometry", worst, o.tol.rel_quadrature));
    }

    {
        VectorSignal vs{{HermiteExpansion{{Quaternion{0}}}, HermiteExpansion{{Quaternion{1}}}}};
        double worst = 0;
        for (int i = 0; i < 10; ++i) {
            Quaternion q = rng.quaternion();
            Quaternion expected = std::numbers::sqrt2 * std::sqrt(two_pi) * conj(q);
            worst = std::max(worst, abs(full_poly_bargmann(vs, q) - expected) / abs(expected));
        }
        r.add(abs_case("full-poly of (0, psi_0) is sqrt2 sqrt(2pi) conj(q)", "full-poly Bargmann example", worst,
                       o.tol.rel_identity));
    }

    {
        double worst = 0;
        for (int k = 0; k <= 5; ++k) {
            HermiteExpansion e;
            e.coeffs.assign(k + 1, Quaternion{});
            e.coeffs[k] = Quaternion{1};
            SignalQuadrature sq = discretize(Signal(e));
            for (int i = 0; i < 5; ++i) {
                Quaternion q = rng.on_slice(slices[i % 2], 1.0);
                Quaternion expected = std::numbers::sqrt2 * std::pow(two_pi, 0.5 * k) / std::sqrt(factorial(k)) * slice_power(q, k);
                worst = std::max(worst, abs(segal_bargmann(sq, q) - expected) / std::max(abs(expected), 1.0));
            }
        }
        r.add(abs_case("Segal-Bargmann of psi_k is sqrt2 (2pi)^{k/2} q^k / sqrt(k!)", "Segal-Bargmann of Hermite functions",
                       worst, o.tol.rel_cross_route));
    }

    {
        double worst = 0;
        for (int n = 0; n <= 5; ++n) {
            HermiteExpansion e;
            e.coeffs.assign(n + 1, Quaternion{});
            e.coeffs[n] = Quaternion{1};
            Quaternion v = true_poly_bargmann_closed(Signal(e), n, Quaternion{0});
            worst = std::max(worst, abs(v - Quaternion{std::numbers::sqrt2 * ((n % 2) ? -1 : 1)}));
        }
        r.add(abs_case("integral route at q=0 on psi_n gives sqrt2 (-1)^n", "true-poly Bargmann at the origin", worst,
                       o.tol.rel_cross_route));
    }

    {
        double worst = 0;
        for (int k = 0; k <= 3; ++k)
            for (int i = 0; i < 6; ++i) {
                std::complex<double> z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
                double x = rng.uniform(-1, 1);
                auto num = creation_tower_numeric([&](std::complex<double> w) { return bargmann_kernel(w, x); }, z, k);
                auto closed = bargmann_kernel_tower(k, z, x);
                worst = std::max(worst, std::abs(num - closed) / std::max(std::abs(closed), std::abs(bargmann_kernel(z, x))));
            }
        r.add(abs_case("(d/dz - 2 pi conj z)^k kernel = (-1)^k 2^{-k/2} kernel H_k (k<=3)", "creation operator on the kernel",
                       worst, 1e-5));
    }

    {
        double worst = 0;
        HermiteExpansion phi = rng.expansion(6);
        for (int i = 0; i < 10; ++i) {
            const ImaginaryUnit& I = slices[i % 2];
            Quaternion q = rng.on_slice(I, 1.0);
            auto b1 = [&](const Quaternion& p) { return true_poly_bargmann(phi, 0, p); };
            Quaternion rhs = (two_pi * conj(q) * b1(q) - wirtinger_derivative(b1, q, I, 1)) / std::sqrt(two_pi);
            Quaternion lhs = true_poly_bargmann(phi, 1, q);
            worst = std::max(worst, abs(lhs - rhs) / std::max(abs(lhs), phi.norm()));
        }
        r.add(abs_case("B^2 phi = (2 pi conj(q) B phi - d_s B phi)/sqrt(2 pi)", "true-poly Bargmann derivative form", worst,
                       o.tol.rel_cross_route));
    }
    return r;
}

// ---------------------------------------------------------------------------

inline Report moyal_suite(const Options& o) {
    Report r{"moyal", {}};
    Rng rng(o.seed * 1000 + 4);
    const int K = 8, nmax = 3;
    const ImaginaryUnit slices[2] = {ImaginaryUnit::j(), detail::tilted_unit()};
    FieldGrid grid = default_field_grid(nmax, K);

    double worst_norm = 0, worst_cross = 0, worst_pol = 0, worst_route = 0, worst_sup = 0;
    for (int n = 0; n <= nmax; ++n) {
        FieldBasis basis(n, K, grid);
        const ImaginaryUnit& I = slices[n % 2];
        HermiteExpansion phi = rng.expansion(K, true), vphi = rng.expansion(K, true);
        TimeFreqField F = basis.synthesize(phi, I), G = basis.synthesize(vphi, I);
        worst_norm = std::max(worst_norm, std::abs(field_norm_sq(F) - 2) / 2);
        Quaternion ip = moyal_inner(F, G);
        worst_cross = std::max(worst_cross, abs(ip - 2 * detail::coeff_inner(phi, vphi)) / 2);
        worst_pol = std::max(worst_pol, abs(ip - moyal_inner_polarized(F, G)) / std::sqrt(field_norm_sq(F) * field_norm_sq(G)));
        for (int i = 0; i < 10; ++i) {
            int ix = grid.x.count / 4 + rng.integer(0, grid.x.count / 2);
            int iw = grid.omega.count / 4 + rng.integer(0, grid.omega.count / 2);
            Quaternion v = true_qstft_via_bargmann(Signal(phi), n, grid.x.at(ix), grid.omega.at(iw), I);
            worst_route = std::max(worst_route, abs(F.at(ix, iw) - v) / std::max(abs(v), 1e-3));
        }
        double sup = 0;
        for (auto& v : F.values) sup = std::max(sup, abs(v));
        worst_sup = std::max(worst_sup, sup / (std::numbers::sqrt2 * phi.norm()));
    }
    r.add(abs_case("||V phi||^2 = 2 ||phi||^2 for unit signals (n<=3)", "Moyal formula", worst_norm, o.tol.rel_grid));
    r.add(abs_case("<V phi, V varphi> = 2 <phi, varphi>", "Moyal formula", worst_cross, o.tol.rel_grid));
    r.add(abs_case("inner product equals its polarization form", "quaternionic polarization identity", worst_pol,
                   o.tol.rel_identity));
    r.add(abs_case("field equals Bargmann route on grid nodes", "QSTFT through the Bargmann transform", worst_route,
                   o.tol.rel_cross_route));
    r.add(le_case("sup |V phi| / (sqrt2 ||phi||)", "pointwise QSTFT bound", worst_sup, 1 + 1e-9));

    double worst_full = 0, worst_full_route = 0;
    for (int n = 0; n <= nmax; ++n) {
        VectorSignal vs;
        for (int j = 0; j <= n; ++j) vs.components.push_back(rng.expansion(K, true));
        const ImaginaryUnit& I = slices[(n + 1) % 2];
        TimeFreqField F = compute_full_field(vs, grid, I);
        worst_full = std::max(worst_full, std::abs(field_norm_sq(F) - 2.0 * (n + 1)) / (2.0 * (n + 1)));
        for (int i = 0; i < 5; ++i) {
            int ix = grid.x.count / 4 + rng.integer(0, grid.x.count / 2), iw = grid.omega.count / 4 + rng.integer(0, grid.omega.count / 2);
            Quaternion v = full_qstft_via_bargmann(vs, grid.x.at(ix), grid.omega.at(iw), I);
            worst_full_route = std::max(worst_full_route, abs(F.at(ix, iw) - v) / std::max(abs(v), 1e-3));
        }
    }
    r.add(abs_case("||full V phi||^2 = 2 (n+1) for unit components (n<=3)", "full-poly Moyal formula", worst_full,
                   o.tol.rel_grid));
    r.add(abs_case("full field equals sum through full-poly Bargmann", "full-poly QSTFT through the Bargmann transform",
                   worst_full_route, o.tol.rel_cross_route));
    return r;
}

// ---------------------------------------------------------------------------

inline Report reconstruction_suite(const Options& o) {
    Report r{"reconstruction", {}};
    Rng rng(o.seed * 1000 + 5);
    const int K = 8;
    auto ys = detail::linspace(-2, 2, 41);

    {
        HermiteExpansion psi0{{Quaternion{1}}};
        TimeFreqField F = compute_field(Signal(psi0), 0, default_field_grid(0, 1), ImaginaryUnit::i());
        auto rec = reconstruct(F, 0, ys);
        double worst = 0;
        for (std::size_t i = 0; i < ys.size(); ++i) worst = std::max(worst, abs(rec[i] - psi0(ys[i])));
        r.add(abs_case("psi_0 round trip on y in [-2,2] (max abs error)", "reconstruction formula", worst, o.tol.rel_grid));
    }

    {
        double worst = 0;
        for (int n = 0; n <= 2; ++n) {
            HermiteExpansion phi = rng.expansion(K, true);
            ImaginaryUnit I = rng.unit();
            TimeFreqField F = compute_field(Signal(phi), n, default_field_grid(n, K), I);
            auto v = adjoint(F, n, ys);
            for (std::size_t i = 0; i < ys.size(); ++i) worst = std::max(worst, abs(v[i] - 2 * phi(ys[i])) / 2);
        }
        r.add(abs_case("V* V = 2 Id on random unit signals (n<=2)", "adjoint left inverse", worst, o.tol.rel_grid));
    }

    {
        double worst = 0;
        for (int n = 0; n <= 2; ++n) {
            VectorSignal vs;
            for (int j = 0; j <= n; ++j) vs.components.push_back(rng.expansion(K, true));
            TimeFreqField F = compute_full_field(vs, default_field_grid(n, K), ImaginaryUnit::k());
            auto v = full_adjoint(F, n, ys);
            for (int j = 0; j <= n; ++j) {
                auto& h = std::get<HermiteExpansion>(vs.components[j]);
                for (std::size_t i = 0; i < ys.size(); ++i) worst = std::max(worst, abs(v[j][i] - 2 * h(ys[i])) / 2);
            }
        }
        r.add(abs_case("full adjoint of full field = 2 Id componentwise (n<=2)", "full-poly adjoint left inverse", worst,
                       o.tol.rel_grid));
    }

    {
        // Smooth decaying test field: a few Gaussian bumps with quaternion weights.
        const int n = 1;
        FieldGrid grid = default_field_grid(n, K);
        ImaginaryUnit I = detail::tilted_unit();
        TimeFreqField L;
        L.grid = grid;
        L.unit = I;
        L.window_order = n;
        L.signal_norms = {1.0};
        L.values.assign(grid.size(), Quaternion{});
        for (int b = 0; b < 5; ++b) {
            double cx = rng.uniform(-2, 2), cw = rng.uniform(-2, 2);
            Quaternion c = rng.quaternion();
            for (int ix = 0; ix < grid.x.count; ++ix)
                for (int iw = 0; iw < grid.omega.count; ++iw) {
                    double dx = grid.x.at(ix) - cx, dw = grid.omega.at(iw) - cw;
                    L.at(ix, iw) += std::exp(-pi * (dx * dx + dw * dw)) * c;
                }
        }
        HermiteExpansion h = rng.expansion(K, true);
        TimeFreqField Vh = compute_field(Signal(h), n, grid, I);
        Rule yr = make_rule(QuadratureSpec{RuleKind::gauss_legendre, -7, 7, 32 * 28});
        auto adj = adjoint(L, n, yr.nodes);
        Quaternion lhs;
        for (std::size_t i = 0; i < yr.size(); ++i) lhs += yr.weights[i] * (conj(h(yr.nodes[i])) * adj[i]);
        Quaternion rhs = moyal_inner(L, Vh);
        double err = abs(lhs - rhs) / (std::sqrt(field_norm_sq(L)) * std::numbers::sqrt2);
        r.add(abs_case("<V* Lambda, h> = <Lambda, V h> for a smooth field", "adjoint duality", err, o.tol.rel_grid));
    }
    return r;
}

// ---------------------------------------------------------------------------

inline Report kernel_suite(const Options& o) {
    Report r{"kernel", {}};
    Rng rng(o.seed * 1000 + 6);
    const ImaginaryUnit slices[2] = {ImaginaryUnit::i(), detail::tilted_unit()};
    const int K = 6;

    {
        double worst = 0;
        for (int n = 0; n <= 3; ++n)
            for (auto& I : slices) {
                HermiteExpansion phi = rng.expansion(K);
                TruePolyBasis B(n, K);
                auto F = [&](const Quaternion& q) { return B(phi.coeffs, q); };
                Quaternion pt = rng.on_slice(I, 0.8);
                auto Kr = [&](const Quaternion& q) { return true_fock_kernel(n, q, pt); };
                auto res = fock_inner(F, Kr, I, default_fock_spec(n, K));
                worst = std::max(worst, abs(res.value - F(pt)) / std::max(abs(F(pt)), phi.norm()));
            }
        r.add(abs_case("<F, K_n(., r)> = F(r) for true-poly Bargmann images (n<=3)", "true-poly Fock reproducing kernel", worst,
                       o.tol.rel_quadrature));
    }

    {
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            Quaternion q = rng.quaternion(0.8);
            int n = i % 4;
            double expected = 2 * std::exp(two_pi * norm_sq(q));
            worst = std::max(worst, abs(true_fock_kernel(n, q, q) - Quaternion{expected}) / expected);
        }
        r.add(abs_case("K_n(q, q) = 2 e^{2 pi |q|^2}", "true-poly Fock kernel diagonal", worst, o.tol.rel_identity));
    }

    {
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            const ImaginaryUnit& I = slices[i % 2];
            Quaternion q = rng.on_slice(I, 0.8), p = rng.on_slice(I, 0.8);
            int n = i % 4;
            Quaternion a = true_fock_kernel(n, q, p), b = conj(true_fock_kernel(n, p, q));
            worst = std::max(worst, abs(a - b) / abs(a));
        }
        r.add(abs_case("K_n(q, r) = conj(K_n(r, q)) on a common slice", "true-poly Fock kernel symmetry", worst, o.tol.rel_identity));
    }

    {
        const int Ks = 8, nmax = 3;
        FieldGrid grid = default_field_grid(nmax, Ks);
        double worst = 0, worst_diag = 0;
        for (int n = 0; n <= nmax; ++n) {
            const ImaginaryUnit& I = slices[n % 2];
            HermiteExpansion phi = rng.expansion(Ks, true);
            TimeFreqField F = compute_field(Signal(phi), n, grid, I);
            double xp = rng.uniform(-1.5, 1.5), wp = rng.uniform(-1.5, 1.5);
            TimeFreqField Kf = gabor_kernel_field(n, xp, wp, grid, I);
            Quaternion v = true_qstft(Signal(phi), n, xp, wp, I);
            worst = std::max(worst, abs(gabor_reproduce(F, Kf) - v) / std::numbers::sqrt2);
            worst_diag = std::max(worst_diag, abs(gabor_kernel(n, xp, wp, xp, wp, I) - Quaternion{1}));
        }
        r.add(abs_case("<V phi, K(., x', w')> = V phi(x', w') (n<=3)", "Gabor space reproducing kernel", worst, o.tol.rel_grid));
        r.add(abs_case("K(x, w; x, w) = 1", "Gabor kernel diagonal", worst_diag, o.tol.rel_identity));

        const int n = 2;
        VectorSignal vs;
        for (int j = 0; j <= n; ++j) vs.components.push_back(rng.expansion(Ks, true));
        const ImaginaryUnit& I = slices[1];
        TimeFreqField F = compute_full_field(vs, grid, I);
        double xp = rng.uniform(-1.5, 1.5), wp = rng.uniform(-1.5, 1.5);
        TimeFreqField Ksum = gabor_kernel_field(0, xp, wp, grid, I);
        for (int j = 1; j <= n; ++j) {
            TimeFreqField Kj = gabor_kernel_field(j, xp, wp, grid, I);
            for (std::size_t i = 0; i < Ksum.values.size(); ++i) Ksum.values[i] += Kj.values[i];
        }
        double err = abs(gabor_reproduce(F, Ksum) - full_qstft(vs, xp, wp, I)) / std::sqrt(2.0 * (n + 1));
        r.add(abs_case("summed kernel reproduces the full field (n=2)", "full-poly Gabor reproducing kernel", err, o.tol.rel_grid));
    }
    return r;
}

// ---------------------------------------------------------------------------

inline Report lieb_suite(const Options& o) {
    Report r{"lieb", {}};
    Rng rng(o.seed * 1000 + 7);
    const int K = 8, nmax = 3, nsig = 50;
    const double ps[] = {2, 3, 4, 6};
    FieldGrid grid = default_field_grid(nmax, K);
    std::vector<FieldBasis> bases;
    for (int n = 0; n <= nmax; ++n) bases.emplace_back(n, K, grid);

    double worst = 0;
    int violations = 0;
    for (int s = 0; s < nsig; ++s) {
        HermiteExpansion phi = rng.expansion(rng.integer(1, K), true);
        ImaginaryUnit I = rng.unit();
        for (int n = 0; n <= nmax; ++n) {
            TimeFreqField F = bases[n].synthesize(phi, I);
            for (double p : ps) {
                LiebReport lr = lieb_lp(F, p);
                worst = std::max(worst, lr.value / lr.bound);
                if (!lr.satisfied) ++violations;
            }
        }
    }
    r.add(le_case("int |V phi|^p / ((2^{p+1}/p) ||phi||^p), 50 unit signals, p in {2,3,4,6}", "Lieb inequality", worst, 1.0));
    r.add(le_case("Lieb violations", "Lieb inequality", violations, 0));

    double worst_full = 0;
    for (int s = 0; s < 10; ++s) {
        int n = s % (nmax + 1);
        ImaginaryUnit I = rng.unit();
        TimeFreqField F;
        F.grid = grid;
        F.unit = I;
        F.full = true;
        F.window_order = n;
        F.values.assign(grid.size(), Quaternion{});
        for (int j = 0; j <= n; ++j) {
            TimeFreqField c = bases[j].synthesize(rng.expansion(K, true), I);
            for (std::size_t i = 0; i < F.values.size(); ++i) F.values[i] += c.values[i];
            F.signal_norms.push_back(1.0);
        }
        for (double p : ps) {
            LiebReport lr = lieb_lp(F, p);
            worst_full = std::max(worst_full, lr.value / lr.bound);
        }
    }
    r.add(le_case("full-poly Lieb ratio with (n+1)^{p-1} factor", "full-poly Lieb inequality", worst_full, 1.0));
    return r;
}

// ---------------------------------------------------------------------------

inline Report uncertainty_suite(const Options& o) {
    Report r{"uncertainty", {}};
    const double radii[] = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
    const double ps[] = {3, 4, 6};
    const ImaginaryUnit I = ImaginaryUnit::i();
    (void)o;

    double worst1 = 0, worst4 = 0;
    for (int k = 0; k <= 2; ++k)
        for (int n = 0; n <= 2; ++n) {
            HermiteExpansion e;
            e.coeffs.assign(k + 1, Quaternion{});
            e.coeffs[k] = Quaternion{1};
            TimeFreqField F = compute_field(Signal(e), n, default_field_grid(2, 3), I);
            for (double rad : radii) {
                Disc d{0, 0, rad};
                auto a = uncertainty_check(F, d);
                worst1 = std::max(worst1, a.bound / a.area);
                for (double p : ps) {
                    auto b = uncertainty_check(F, d, p);
                    worst4 = std::max(worst4, b.bound / b.area);
                }
            }
        }
    r.add(le_case("(1-eps)/2 <= |U| on discs, psi_0..psi_2 (bound/area)", "weak uncertainty principle", worst1, 1.0));
    r.add(le_case("Lp form of the area bound, p in {3,4,6} (bound/area)", "weak uncertainty principle, Lp form", worst4, 1.0));

    double worst2 = 0, worst3 = 0;
    VectorSignal vs;
    for (int j = 0; j <= 2; ++j) {
        HermiteExpansion e;
        e.coeffs.assign(j + 1, Quaternion{});
        e.coeffs[j] = Quaternion{1};
        vs.components.push_back(e);
    }
    TimeFreqField F = compute_full_field(vs, default_field_grid(2, 3), I);
    for (double rad : radii) {
        Disc d{0, 0, rad};
        auto a = uncertainty_check(F, d);
        worst2 = std::max(worst2, a.bound / a.area);
        for (double p : ps) {
            auto b = uncertainty_check(F, d, p);
            worst3 = std::max(worst3, b.bound / b.area);
        }
    }
    r.add(le_case("full-poly (1-eps)/(2(n+1)^2) <= |U| (bound/area)", "full-poly weak uncertainty principle", worst2, 1.0));
    r.add(le_case("full-poly Lp form of the area bound (bound/area)", "full-poly weak uncertainty principle, Lp form", worst3,
                  1.0));
    return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::pair<std::string, Report (*)(const Options&)>>& suites() {
    static const std::vector<std::pair<std::string, Report (*)(const Options&)>> s = {
        {"hermite", hermite_suite},         {"complex-hermite", complex_hermite_suite},
        {"bargmann", bargmann_suite},       {"moyal", moyal_suite},
        {"reconstruction", reconstruction_suite}, {"kernel", kernel_suite},
        {"lieb", lieb_suite},               {"uncertainty", uncertainty_suite}};
    return s;
}

// Runs one suite by name, or every suite for "all" (cases prefixed by suite name).
inline Report run(const std::string& name, const Options& o) {
    o.tol.validate();
    if (name == "all") {
        Report all{"all", {}};
        for (auto& [n, fn] : suites()) {
            Report s = fn(o);
            for (auto& c : s.cases) {
                c.identity = n + ": " + c.identity;
                all.add(c);
            }
        }
        return all;
    }
    for (auto& [n, fn] : suites())
        if (n == name) return fn(o);
    throw input_error("unknown suite '" + name + "'");
}

}  // namespace qtfa::verify
