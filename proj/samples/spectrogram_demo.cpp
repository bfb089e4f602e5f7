// Spectrogram of a small quaternion signal: prints |V phi| on a coarse grid,
// the field energy and the reconstruction error at a few times.
#include <cstdio>

#include <qtfa/qtfa.hpp>

int main() {
    using namespace qtfa;
    HermiteExpansion phi;
    phi.coeffs = {Quaternion{0.6}, Quaternion{0, 0.48, 0, 0}, Quaternion{0, 0, 0, 0.64}};
    const int n = 1;
    ImaginaryUnit I = ImaginaryUnit::j();
    FieldGrid grid = default_field_grid(n, 3, 161);
    TimeFreqField F = compute_field(Signal(phi), n, grid, I);

    std::printf("|V phi| on a coarse grid (rows x, columns omega)\n");
    for (int ix = 0; ix < grid.x.count; ix += 20) {
        std::printf("x=%6.2f ", grid.x.at(ix));
        for (int iw = 0; iw < grid.omega.count; iw += 20) std::printf(" %.3f", abs(F.at(ix, iw)));
        std::printf("\n");
    }
    std::printf("field energy %.12f, twice the signal energy %.12f\n", field_norm_sq(F), 2 * phi.norm_sq());
    for (double y : {-1.0, 0.0, 0.5}) std::printf("y=%5.2f  |phi - V*V phi/2| = %.3e\n", y, abs(reconstruct(F, n, y) - phi(y)));
    return 0;
}
