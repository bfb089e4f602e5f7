// qtfa: spectrograms, Bargmann evaluations, reconstruction and identity checks
// for quaternion-valued signals with Hermite windows.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qtfa/io.hpp>
#include <qtfa/qtfa.hpp>
#include <qtfa/verify.hpp>

namespace {

using namespace qtfa;
using io::json;

enum Exit { ok = 0, verify_failed = 1, bad_input = 2, numerical_failure = 3 };

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-")
        std::cout << content;
    else
        io::atomic_write(out, content);
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

// Field grids larger than the default must fit in memory; cap at 4096 x 4096.
void check_grid_size(const FieldGrid& g) {
    if (g.x.count > 4096 || g.omega.count > 4096) throw input_error("grid is limited to 4096 nodes per axis");
}

struct SpectrogramArgs {
    std::string input, out, slice = "i", grid;
    int n = 0;
    bool n_given = false, full = false;
    double tol = 1e-8;
};

int run_spectrogram(const SpectrogramArgs& a) {
    VectorSignal vs = io::parse_vector_signal(io::load_json(a.input));
    ImaginaryUnit I = io::parse_slice(a.slice);
    for (auto& c : vs.components)
        if (auto w = truncation_warning(c, a.tol)) {
            std::cerr << "error: " << *w << "\n";
            return numerical_failure;
        }
    int K = 1;
    for (auto& c : vs.components)
        if (auto* h = std::get_if<HermiteExpansion>(&c)) K = std::max(K, int(h->coeffs.size()));

    TimeFreqField F;
    if (a.full) {
        int n = vs.order();
        if (a.n_given && a.n != n)
            throw input_error("--full with " + std::to_string(vs.components.size()) + " components means window order " +
                              std::to_string(n));
        FieldGrid g = a.grid.empty() ? default_field_grid(n, K) : io::parse_grid(a.grid);
        check_grid_size(g);
        F = compute_full_field(vs, g, I);
    } else {
        if (vs.components.size() != 1) throw input_error("vector signal needs --full");
        FieldGrid g = a.grid.empty() ? default_field_grid(a.n, K) : io::parse_grid(a.grid);
        check_grid_size(g);
        F = compute_field(vs.components[0], a.n, g, I);
    }
    double edge = field_edge_ratio(F);
    if (edge > 1e-6) warn("field reaches " + std::to_string(edge) + " of its peak on the grid boundary; enlarge the grid");
    emit(a.out, io::field_csv(F));
    return ok;
}

struct BargmannArgs {
    std::string input, out, points, grid, slice = "i";
    int n = 0;
    bool full = false;
};

int run_bargmann(const BargmannArgs& a) {
    VectorSignal vs = io::parse_vector_signal(io::load_json(a.input));
    if (!a.full && vs.components.size() != 1) throw input_error("vector signal needs --full");
    std::vector<Quaternion> qs;
    if (!a.points.empty()) {
        json j = io::load_json(a.points);
        if (!j.is_array() || j.empty()) throw input_error("points file must be a nonempty JSON array of [w,x,y,z]");
        for (auto& p : j) qs.push_back(io::parse_quaternion(p));
    } else if (!a.grid.empty()) {
        FieldGrid g = io::parse_grid(a.grid);
        check_grid_size(g);
        ImaginaryUnit I = io::parse_slice(a.slice);
        for (int iu = 0; iu < g.x.count; ++iu)
            for (int iv = 0; iv < g.omega.count; ++iv) qs.push_back(I.lift({g.x.at(iu), g.omega.at(iv)}));
    } else {
        throw input_error("bargmann needs --points or --grid");
    }

    // Coefficient route (projection onto 64 Hermite functions for samples) and integral route.
    std::vector<HermiteExpansion> coeffs;
    std::vector<SignalQuadrature> quads;
    for (auto& c : vs.components) {
        coeffs.push_back(as_expansion(c));
        quads.push_back(discretize(c));
    }
    std::string s = "# n=" + std::to_string(a.full ? vs.order() : a.n) + (a.full ? " full" : "") + "\n";
    s += "qw,qx,qy,qz,coef_w,coef_x,coef_y,coef_z,closed_w,closed_x,closed_y,closed_z,difference\n";
    double worst = 0;
    for (auto& q : qs) {
        Quaternion c, d;
        if (a.full) {
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                c += true_poly_bargmann(coeffs[j], int(j), q);
                d += true_poly_bargmann_closed(quads[j], int(j), q);
            }
        } else {
            c = true_poly_bargmann(coeffs[0], a.n, q);
            d = true_poly_bargmann_closed(quads[0], a.n, q);
        }
        double diff = abs(c - d);
        worst = std::max(worst, diff);
        for (const Quaternion* v : {&q, &c, &d}) s += io::format_double(v->w) + ',' + io::format_double(v->x) + ',' +
                                                    io::format_double(v->y) + ',' + io::format_double(v->z) + ',';
        s += io::format_double(diff) + '\n';
    }
    emit(a.out, s);
    std::cerr << "max_route_difference=" << io::format_double(worst) << "\n";
    return ok;
}

struct ReconstructArgs {
    std::string field, out, ys = "-2,2,41", reference;
    int n = 0;
    double tol = 1e-3;
};

int run_reconstruct(const ReconstructArgs& a) {
    TimeFreqField F = io::read_field_csv(a.field);
    UniformGrid yg = io::parse_range(a.ys);
    std::vector<double> ys;
    for (int i = 0; i < yg.count; ++i) ys.push_back(yg.at(i));
    double edge = field_edge_ratio(F);
    if (edge > 1e-6) warn("field reaches " + std::to_string(edge) + " of its peak on the grid boundary; reconstruction is truncated");

    std::vector<std::vector<Quaternion>> comps;
    if (F.full) {
        auto adj = full_adjoint(F, a.n, ys);
        for (auto& v : adj) {
            for (auto& q : v) q *= 0.5;
            comps.push_back(std::move(v));
        }
    } else {
        comps.push_back(reconstruct(F, a.n, ys));
    }

    std::string s = "y,component,qw,qx,qy,qz,abs\n";
    for (std::size_t j = 0; j < comps.size(); ++j)
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const Quaternion& q = comps[j][i];
            s += io::format_double(ys[i]) + ',' + std::to_string(j) + ',' + io::format_double(q.w) + ',' +
                 io::format_double(q.x) + ',' + io::format_double(q.y) + ',' + io::format_double(q.z) + ',' +
                 io::format_double(abs(q)) + '\n';
        }
    emit(a.out, s);

    if (!a.reference.empty()) {
        VectorSignal ref = io::parse_vector_signal(io::load_json(a.reference));
        if (ref.components.size() != comps.size()) throw input_error("reference has a different number of components");
        double worst = 0;
        for (std::size_t j = 0; j < comps.size(); ++j) {
            HermiteExpansion h = as_expansion(ref.components[j]);
            for (std::size_t i = 0; i < ys.size(); ++i) worst = std::max(worst, abs(comps[j][i] - h(ys[i])));
        }
        std::cerr << "max_abs_error=" << io::format_double(worst) << (worst < a.tol ? " ok" : " FAIL") << "\n";
        if (!(worst < a.tol)) return numerical_failure;
    }
    return ok;
}

struct VerifyArgs {
    std::string suite, out;
    std::vector<std::string> tols;
    std::uint64_t seed = 1;
    bool json_stdout = false;
};

int run_verify(const VerifyArgs& a) {
    verify::Options o;
    o.seed = a.seed;
    for (auto& t : a.tols) {
        auto eq = t.find('=');
        if (eq == std::string::npos) throw input_error("--tol expects key=value");
        std::string key = t.substr(0, eq);
        double v = io::parse_double(t.substr(eq + 1));
        if (key == "identity")
            o.tol.rel_identity = v;
        else if (key == "cross_route")
            o.tol.rel_cross_route = v;
        else if (key == "quadrature")
            o.tol.rel_quadrature = v;
        else if (key == "grid")
            o.tol.rel_grid = v;
        else
            throw input_error("unknown tolerance '" + key + "' (identity, cross_route, quadrature, grid)");
    }
    verify::Report rep = verify::run(a.suite, o);
    std::string js = rep.to_json().dump(2) + "\n";
    if (!a.out.empty()) io::atomic_write(a.out, js);
    if (a.json_stdout) {
        std::cout << js;
    } else {
        std::printf("%-6s %-80s %12s %12s %10s\n", "result", "identity", "measured", "expected", "tolerance");
        for (auto& c : rep.cases)
            std::printf("%-6s %-80s %12.4e %12.4e %10.2e\n", c.pass ? "PASS" : "FAIL", c.identity.c_str(), c.measured, c.expected,
                        c.tolerance);
        std::printf("%s: %s\n", rep.suite.c_str(), rep.pass() ? "all identities hold" : "FAILED");
    }
    return rep.pass() ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quaternion time-frequency analysis with Hermite windows"};
    app.require_subcommand(1);

    SpectrogramArgs sa;
    auto* spec = app.add_subcommand("spectrogram", "Compute a QSTFT field on a grid and write it as CSV");
    spec->add_option("input", sa.input, "Signal JSON")->required();
    auto* nopt = spec->add_option("-n,--window-order", sa.n, "Window order n (psi_n)")->check(CLI::NonNegativeNumber);
    spec->add_option("--slice", sa.slice, "Imaginary unit: i, j, k or x,y,z");
    spec->add_option("--grid", sa.grid, "xmin,xmax,nx,wmin,wmax,nw");
    spec->add_flag("--full", sa.full, "Vector signal through windows psi_0..psi_n");
    spec->add_option("--tol", sa.tol, "Largest allowed tail/peak ratio for sampled signals");
    spec->add_option("--out", sa.out, "Output CSV (default stdout)");

    BargmannArgs ba;
    auto* barg = app.add_subcommand("bargmann", "Evaluate the polyanalytic Bargmann transform by both routes");
    barg->add_option("input", ba.input, "Signal JSON")->required();
    barg->add_option("-n,--window-order", ba.n, "Order n (transform of order n+1)")->check(CLI::NonNegativeNumber);
    barg->add_option("--points", ba.points, "JSON array of quaternions [w,x,y,z]");
    barg->add_option("--grid", ba.grid, "umin,umax,nu,vmin,vmax,nv on the slice");
    barg->add_option("--slice", ba.slice, "Imaginary unit for --grid");
    barg->add_flag("--full", ba.full, "Full-polyanalytic transform of a vector signal");
    barg->add_option("--out", ba.out, "Output CSV (default stdout)");

    ReconstructArgs ra;
    auto* rec = app.add_subcommand("reconstruct", "Recover a signal from a field CSV");
    rec->add_option("field", ra.field, "Field CSV written by spectrogram")->required();
    rec->add_option("-n,--window-order", ra.n, "Window order the field was computed with")->required()->check(CLI::NonNegativeNumber);
    rec->add_option("--y", ra.ys, "ymin,ymax,ny");
    rec->add_option("--reference", ra.reference, "Signal JSON to compare against");
    rec->add_option("--tol", ra.tol, "Largest allowed error against --reference");
    rec->add_option("--out", ra.out, "Output CSV (default stdout)");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Check the transform identities numerically");
    ver->add_option("suite", va.suite, "hermite|complex-hermite|bargmann|moyal|reconstruction|kernel|lieb|uncertainty|all")
        ->required();
    ver->add_option("--seed", va.seed, "Random seed");
    ver->add_option("--tol", va.tols, "Tolerance override key=value (identity, cross_route, quadrature, grid)");
    ver->add_option("--out", va.out, "Write the JSON report here");
    ver->add_flag("--json", va.json_stdout, "Print the JSON report instead of the table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : bad_input;
    }

    try {
        if (*spec) {
            sa.n_given = nopt->count() > 0;
            return run_spectrogram(sa);
        }
        if (*barg) return run_bargmann(ba);
        if (*rec) return run_reconstruct(ra);
        if (*ver) return run_verify(va);
    } catch (const numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numerical_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numerical_failure;
    }
    return ok;
}
