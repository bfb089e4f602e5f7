// Acceptance gate: one PASS/FAIL line per criterion with pinned tolerances.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>

#include <qtfa/io.hpp>
#include <qtfa/qtfa.hpp>
#include <qtfa/random.hpp>

#ifndef QTFA_CLI
#error "QTFA_CLI must name the qtfa executable"
#endif

using namespace qtfa;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    // Records a measured value against a limit; pass requires measured <= limit.
    void check(const std::string& what, double measured, double limit) {
        bool ok = measured <= limit;
        pass = pass && ok;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s%s=%.3e (<= %.0e)", detail.empty() ? "" : "; ", what.c_str(), measured, limit);
        detail += buf;
    }
};

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit > 0) o.check("time_s", secs, time_limit);
    if (!o.pass) ++failures;
    std::printf("criterion %2d %-37s %s  %s  [%.1f s]\n", id, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
}

HermiteExpansion basis(int k) {
    HermiteExpansion h;
    h.coeffs.assign(k + 1, Quaternion{});
    h.coeffs[k] = Quaternion{1};
    return h;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

const ImaginaryUnit tilted = ImaginaryUnit::from(1, -2, 2);

Outcome hermite() {
    Outcome o;
    double rec = 0, der = 0, nrm = 0, est = 0;
    for (double nu : {1.0, two_pi}) {
        auto xs = linspace(-3, 3, 61);
        for (int n = 0; n <= 12; ++n) {
            double diff = 0, scale = 0, ddiff = 0, dscale = 0;
            for (double x : xs) {
                double a = hermite_poly(n, nu, x), b = hermite_poly_explicit(n, nu, x);
                diff = std::max(diff, std::abs(a - b));
                scale = std::max(scale, std::abs(b));
                double h = 1e-3;
                auto f = [&](double t) { return hermite_poly(n, nu, t); };
                double fd = (8 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12 * h);
                double d = hermite_poly_derivative(n, nu, x);
                ddiff = std::max(ddiff, std::abs(fd - d));
                dscale = std::max(dscale, std::abs(d));
            }
            rec = std::max(rec, diff / scale);
            if (n > 0) der = std::max(der, ddiff / dscale);
        }
        for (int n = 0; n <= 10; ++n) {
            double L = std::sqrt(2.0 * (2 * n + 1) / nu) + 7 / std::sqrt(nu);
            auto res = integrate_1d(
                [&](double x) {
                    double h = hermite_fn(n, nu, x);
                    return h * h;
                },
                QuadratureSpec{RuleKind::gauss_legendre, -L, L, 128});
            nrm = std::max(nrm, relative_error(res.value, hermite_norm_sq(n, nu)));
            est = std::max(est, res.error_estimate / res.value);
        }
    }
    o.check("recurrence_vs_sum", rec, 1e-10);
    o.check("derivative", der, 1e-6);
    o.check("norm", nrm, 1e-6);
    o.check("norm_estimate", est, 1e-6);
    return o;
}

Outcome complex_hermite_orthogonality() {
    Outcome o;
    double worst = 0, diag = 0, est = 0;
    for (double a : {1.0, two_pi}) {
        // Gram matrix of H_{m,p}, m, p <= 4, under e^{-a|z|^2} dA; coarse and doubled rules.
        std::vector<std::complex<double>> gram[2];
        PolarSpec spec{std::sqrt(70 / a), 96, 48};
        for (int pass = 0; pass < 2; ++pass) {
            Rule2D rule = make_rule(pass ? spec.doubled() : spec);
            auto& g = gram[pass];
            g.assign(625, 0.0);
            std::vector<std::complex<double>> h(25);
            for (std::size_t i = 0; i < rule.size(); ++i) {
                std::complex<double> z{rule.u[i], rule.v[i]};
                double w = rule.weights[i] * std::exp(-a * std::norm(z));
                for (int m = 0; m <= 4; ++m)
                    for (int p = 0; p <= 4; ++p) h[m * 5 + p] = complex_hermite(m, p, a, z);
                for (int r = 0; r < 25; ++r)
                    for (int c = 0; c < 25; ++c) g[r * 25 + c] += w * std::conj(h[c]) * h[r];
            }
        }
        for (int r = 0; r < 25; ++r)
            for (int c = 0; c < 25; ++c) {
                int m = r / 5, p = r % 5, m2 = c / 5, p2 = c % 5;
                double n1 = pi * std::pow(a, p + m - 1) * factorial(m) * factorial(p);
                double n2 = pi * std::pow(a, p2 + m2 - 1) * factorial(m2) * factorial(p2);
                double expect = r == c ? n1 : 0;
                worst = std::max(worst, std::abs(gram[1][r * 25 + c] - expect) / std::sqrt(n1 * n2));
                est = std::max(est, std::abs(gram[1][r * 25 + c] - gram[0][r * 25 + c]) / std::sqrt(n1 * n2));
                if (r == c && a == two_pi) {
                    double closed = factorial(m) * factorial(p) * std::pow(two_pi, p + m) / 2;
                    diag = std::max(diag, std::abs(gram[1][r * 25 + c].real() - closed) / closed);
                }
            }
    }
    o.check("gram", worst, 1e-4);
    o.check("diag_2pi", diag, 1e-4);
    o.check("estimate", est, 1e-4);
    return o;
}

Outcome bargmann_routes() {
    Outcome o;
    Rng rng(20261018);
    double worst = 0;
    for (int n = 0; n <= 3; ++n) {
        HermiteExpansion phi = rng.expansion(8, true);
        SignalQuadrature sq = discretize(phi);
        for (const ImaginaryUnit& I : {ImaginaryUnit::j(), tilted})
            for (int i = 0; i < 20; ++i) {
                Quaternion q = rng.on_slice(I, 1.5);
                Quaternion a = true_poly_bargmann(phi, n, q), b = true_poly_bargmann_closed(sq, n, q);
                worst = std::max(worst, abs(a - b) / abs(b));
            }
    }
    o.check("route_rel", worst, 1e-6);
    return o;
}

Outcome isometries() {
    Outcome o;
    Rng rng(20261019);
    const int K = 8;
    double iso = 0, est = 0, cross = 0;
    std::vector<HermiteExpansion> sig;
    for (int i = 0; i < 10; ++i) {
        sig.push_back(rng.expansion(K, true));
        int n = i % 4;
        const ImaginaryUnit& I = i % 2 ? tilted : ImaginaryUnit::k();
        TruePolyBasis b(n, K);
        auto F = [&](const Quaternion& q) { return b(sig.back().coeffs, q); };
        auto res = fock_inner(F, F, I, default_fock_spec(n, K));
        iso = std::max(iso, abs(res.value - Quaternion{sig.back().norm_sq()}) / sig.back().norm_sq());
        est = std::max(est, res.error_estimate / abs(res.value));
    }
    for (int n = 0; n <= 3; ++n)
        for (int m = n + 1; m <= 3; ++m) {
            TruePolyBasis bn(n, K), bm(m, K);
            const HermiteExpansion &f = sig[n], &g = sig[m + 4];
            auto F = [&](const Quaternion& q) { return bn(f.coeffs, q); };
            auto G = [&](const Quaternion& q) { return bm(g.coeffs, q); };
            cross = std::max(cross, abs(fock_inner(F, G, tilted, default_fock_spec(m, K)).value));
        }
    o.check("fock_norm_rel", iso, 1e-4);
    o.check("estimate", est, 1e-4);
    o.check("cross_order_abs", cross, 1e-4);
    return o;
}

Outcome moyal(int n) {
    Outcome o;
    Rng rng(20261020 + n);
    const int K = 8;
    const ImaginaryUnit& I = n % 2 ? tilted : ImaginaryUnit::i();
    HermiteExpansion phi = rng.expansion(K, true);
    TimeFreqField F = compute_field(Signal(phi), n, default_field_grid(n, K), I);
    o.check("true_dev_from_2", std::abs(field_norm_sq(F) - 2), 1e-3);
    VectorSignal v;
    for (int j = 0; j <= n; ++j) v.components.push_back(rng.expansion(K, true));
    TimeFreqField G = compute_full_field(v, default_field_grid(n, K), I);
    o.check("full_dev_from_2(n+1)", std::abs(field_norm_sq(G) - 2 * (n + 1)), 1e-3);
    return o;
}

Outcome reconstruction() {
    Outcome o;
    Rng rng(20261030);
    const int K = 8;
    auto ys = linspace(-2, 2, 81);
    double rec = 0, adj = 0, comp = 0;
    for (int n = 0; n <= 3; ++n) {
        HermiteExpansion phi = rng.expansion(K, true);
        const ImaginaryUnit& I = n % 2 ? ImaginaryUnit::j() : tilted;
        TimeFreqField F = compute_field(Signal(phi), n, default_field_grid(n, K), I);
        auto r = reconstruct(F, n, ys);
        auto a = adjoint(F, n, ys);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            rec = std::max(rec, abs(r[i] - phi(ys[i])));
            adj = std::max(adj, abs(a[i] - 2.0 * phi(ys[i])));
        }
    }
    for (int n = 0; n <= 2; ++n) {
        VectorSignal v;
        for (int j = 0; j <= n; ++j) v.components.push_back(rng.expansion(K, true));
        TimeFreqField F = compute_full_field(v, default_field_grid(n, K), tilted);
        auto parts = full_adjoint(F, n, ys);
        for (int j = 0; j <= n; ++j) {
            const auto& h = std::get<HermiteExpansion>(v.components[j]);
            for (std::size_t i = 0; i < ys.size(); ++i) comp = std::max(comp, abs(parts[j][i] - 2.0 * h(ys[i])));
        }
    }
    o.check("roundtrip", rec, 1e-3);
    o.check("adjoint_2id", adj, 1e-3);
    o.check("full_componentwise", comp, 1e-3);
    return o;
}

Outcome kernels() {
    Outcome o;
    Rng rng(20261040);
    const int K = 8;
    double repro = 0, est = 0, diag = 0, gabor = 0;
    for (int n = 0; n <= 3; ++n) {
        const ImaginaryUnit& I = n % 2 ? tilted : ImaginaryUnit::j();
        HermiteExpansion phi = rng.expansion(K, true);
        TruePolyBasis b(n, K);
        Quaternion r = rng.on_slice(I, 0.6);
        auto F = [&](const Quaternion& q) { return b(phi.coeffs, q); };
        auto Kr = [&](const Quaternion& q) { return true_fock_kernel(n, q, r); };
        auto res = fock_inner(F, Kr, I, default_fock_spec(n, K));
        repro = std::max(repro, abs(res.value - F(r)) / abs(F(r)));
        est = std::max(est, res.error_estimate / abs(res.value));
    }
    for (int i = 0; i < 20; ++i) {
        Quaternion q = rng.quaternion(0.8);
        double expect = 2 * std::exp(two_pi * norm_sq(q));
        diag = std::max(diag, abs(true_fock_kernel(i % 4, q, q) - Quaternion{expect}) / expect);
    }
    for (int n = 0; n <= 3; ++n) {
        const ImaginaryUnit& I = n % 2 ? ImaginaryUnit::k() : tilted;
        HermiteExpansion phi = rng.expansion(K, true);
        FieldGrid grid = default_field_grid(3, K);
        TimeFreqField F = compute_field(Signal(phi), n, grid, I);
        double xp = rng.uniform(-1.5, 1.5), wp = rng.uniform(-1.5, 1.5);
        TimeFreqField Kf = gabor_kernel_field(n, xp, wp, grid, I);
        gabor = std::max(gabor, abs(gabor_reproduce(F, Kf) - true_qstft(Signal(phi), n, xp, wp, I)) / std::sqrt(2.0));
    }
    o.check("fock_reproducing_rel", repro, 1e-4);
    o.check("estimate", est, 1e-4);
    o.check("diagonal_rel", diag, 1e-12);
    o.check("gabor_reproducing", gabor, 1e-3);
    return o;
}

Outcome bounds() {
    Outcome o;
    Rng rng(20261050);
    const int K = 8;
    int pointwise = 0, growth = 0, lieb = 0, unc = 0;
    auto grid20 = linspace(-3, 3, 20);
    for (int n = 0; n <= 3; ++n) {
        const ImaginaryUnit& I = n % 2 ? tilted : ImaginaryUnit::i();
        HermiteExpansion phi = rng.expansion(K, true);
        VectorSignal v;
        for (int j = 0; j <= n; ++j) v.components.push_back(rng.expansion(K, true));
        double vn = vector_norm(v);
        SignalQuadrature sq = discretize(phi);
        for (double x : grid20)
            for (double w : grid20) {
                pointwise += abs(true_qstft(sq, n, x, w, I)) > std::sqrt(2.0);
                pointwise += abs(full_qstft(v, x, w, I)) > std::sqrt(2.0) * (n + 1);
                Quaternion q = I.lift({x / 1.5, w / 1.5});
                growth += abs(true_poly_bargmann(phi, n, q)) > true_poly_bound(q, 1.0);
                growth += abs(full_poly_bargmann(v, q)) > full_poly_bound(q, n, vn);
            }
    }
    // Lieb on 50 unit signals, windows psi_0..psi_3.
    std::vector<FieldBasis> bases;
    for (int n = 0; n <= 3; ++n) bases.emplace_back(n, K, default_field_grid(3, K));
    for (int i = 0; i < 50; ++i) {
        TimeFreqField F = bases[i % 4].synthesize(rng.expansion(K, true), i % 2 ? tilted : ImaginaryUnit::j());
        for (double p : {2.0, 3.0, 4.0, 6.0}) lieb += !lieb_lp(F, p).satisfied;
    }
    for (int n = 0; n <= 3; ++n) {
        VectorSignal v;
        for (int j = 0; j <= n; ++j) v.components.push_back(rng.expansion(K, true));
        TimeFreqField F = compute_full_field(v, default_field_grid(3, K), tilted);
        for (double p : {2.0, 3.0, 4.0, 6.0}) lieb += !lieb_lp(F, p).satisfied;
    }
    // Weak uncertainty on disc families for psi_0, psi_1, psi_2.
    std::vector<Disc> discs;
    for (double rad : {0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0}) {
        discs.push_back({0, 0, rad});
        discs.push_back({0.7, -0.4, rad});
    }
    FieldGrid ug = default_field_grid(2, 3);
    for (int k = 0; k <= 2; ++k)
        for (int n = 0; n <= 2; ++n) {
            TimeFreqField F = compute_field(Signal(basis(k)), n, ug, ImaginaryUnit::i());
            for (const Disc& d : discs) {
                unc += !uncertainty_check(F, d).satisfied;
                for (double p : {3.0, 4.0, 6.0}) unc += !uncertainty_check(F, d, p).satisfied;
            }
        }
    for (int n = 0; n <= 2; ++n) {
        VectorSignal v;
        for (int j = 0; j <= n; ++j) v.components.push_back(basis(j));
        TimeFreqField F = compute_full_field(v, ug, ImaginaryUnit::k());
        for (const Disc& d : discs) {
            unc += !uncertainty_check(F, d).satisfied;
            for (double p : {3.0, 4.0, 6.0}) unc += !uncertainty_check(F, d, p).satisfied;
        }
    }
    o.check("pointwise_violations", pointwise, 0);
    o.check("growth_violations", growth, 0);
    o.check("lieb_violations", lieb, 0);
    o.check("uncertainty_violations", unc, 0);
    return o;
}

Outcome operator_identity() {
    Outcome o;
    double kernel = 0, transform = 0;
    for (int k = 0; k <= 3; ++k)
        for (std::complex<double> z : {std::complex<double>(0.25, -0.15), std::complex<double>(-0.6, 0.4), std::complex<double>(0.1, 0.9)})
            for (double x : {-0.8, 0.0, 0.45}) {
                auto num = creation_tower_numeric([x](std::complex<double> w) { return bargmann_kernel(w, x); }, z, k);
                auto closed = bargmann_kernel_tower(k, z, x);
                kernel = std::max(kernel, std::abs(num - closed) / std::max(std::abs(closed), std::abs(bargmann_kernel(z, x))));
            }
    // On the transform: B^{k+1} phi = (2 pi conj z - d/dz)^k B phi / sqrt((2 pi)^k k!), real coefficients on the slice i.
    HermiteExpansion phi;
    phi.coeffs = {Quaternion{0.5}, Quaternion{-0.3}, Quaternion{0.6}, Quaternion{0.2}, Quaternion{-0.4}, Quaternion{0.3}};
    auto B = [&](std::complex<double> z) { return on_slice(true_poly_bargmann(phi, 0, ImaginaryUnit::i().lift(z)), ImaginaryUnit::i()); };
    for (int k = 1; k <= 3; ++k)
        for (std::complex<double> z : {std::complex<double>(0.3, 0.2), std::complex<double>(-0.5, -0.1)}) {
            std::complex<double> num = creation_tower_numeric(B, z, k) * ((k % 2) ? -1.0 : 1.0) / std::sqrt(std::pow(two_pi, k) * factorial(k));
            std::complex<double> closed = on_slice(true_poly_bargmann(phi, k, ImaginaryUnit::i().lift(z)), ImaginaryUnit::i());
            transform = std::max(transform, std::abs(num - closed) / std::max(std::abs(closed), phi.norm()));
        }
    o.check("kernel_tower_rel", kernel, 1e-5);
    o.check("transform_tower_rel", transform, 1e-5);
    return o;
}

Outcome determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("qtfa_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    std::string cli = QTFA_CLI;
    int ra = std::system(("\"" + cli + "\" verify all --seed 1 --out \"" + a + "\" > /dev/null").c_str());
    int rb = std::system(("QTFA_THREADS=3 \"" + cli + "\" verify all --seed 1 --out \"" + b + "\" > /dev/null").c_str());
    std::string ja = io::read_file(a), jb = io::read_file(b);
    fs::remove_all(dir);
    o.check("exit_status_a", ra, 0);
    o.check("exit_status_b", rb, 0);
    o.check("bytes_differing", ja == jb && !ja.empty() ? 0 : 1, 0);
    o.detail += "; json_bytes=" + std::to_string(ja.size());
    return o;
}

}  // namespace

int main() {
    criterion(1, "hermite recurrence/derivative/norm", 5, hermite);
    criterion(2, "complex hermite orthogonality", 30, complex_hermite_orthogonality);
    criterion(3, "bargmann dual-route equality", 30, bargmann_routes);
    criterion(4, "fock isometry, cross-order", 0, isometries);
    for (int n = 0; n <= 3; ++n) {
        std::string name = "moyal n=" + std::to_string(n);
        criterion(5, name.c_str(), 60, [n] { return moyal(n); });
    }
    criterion(6, "reconstruction and adjoint", 0, reconstruction);
    criterion(7, "reproducing kernels", 0, kernels);
    criterion(8, "pointwise, growth, lieb, uncertainty", 0, bounds);
    criterion(9, "creation operator tower", 0, operator_identity);
    criterion(10, "verify all determinism", 0, determinism);
    std::printf("%s: %d criterion line(s) failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
