#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "quaternion.hpp"
#include "signal.hpp"

namespace qtfa {

// Seeded generator with a platform-independent uniform mapping.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    double uniform(double a = 0, double b = 1) { return a + (b - a) * (double(g_() >> 11) * 0x1.0p-53); }
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)) % (hi - lo + 1); }

    Quaternion quaternion(double scale = 1) {
        return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
    }

    ImaginaryUnit unit() {
        for (;;) {
            Quaternion v{0, uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
            double n = abs(v);
            if (n > 0.2 && n <= 1) return ImaginaryUnit::from(v);
        }
    }

    // Point x + I y on the slice with |x|, |y| <= r.
    Quaternion on_slice(const ImaginaryUnit& I, double r) { return I.lift({uniform(-r, r), uniform(-r, r)}); }

    HermiteExpansion expansion(int K, bool unit_norm = false) {
        HermiteExpansion h;
        for (int k = 0; k < K; ++k) h.coeffs.push_back(quaternion());
        if (unit_norm) {
            double n = h.norm();
            for (auto& c : h.coeffs) c /= n;
        }
        return h;
    }

private:
    std::mt19937_64 g_;
};

}  // namespace qtfa
