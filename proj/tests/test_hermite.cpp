#include <gtest/gtest.h>

#include <cstdio>

#include <qtfa/hermite.hpp>
#include <qtfa/random.hpp>

using namespace qtfa;

TEST(HermitePoly, LowOrdersByHand) {
    for (double nu : {1.0, two_pi})
        for (double x : {-1.3, 0.0, 0.4, 2.0}) {
            EXPECT_EQ(hermite_poly(0, nu, x), 1);
            EXPECT_DOUBLE_EQ(hermite_poly(1, nu, x), 2 * nu * x);
            EXPECT_NEAR(hermite_poly(2, nu, x), 4 * nu * nu * x * x - 2 * nu, 1e-12 * (1 + 4 * nu * nu * x * x));
            double h3 = 8 * nu * nu * nu * x * x * x - 12 * nu * nu * x;
            EXPECT_NEAR(hermite_poly(3, nu, x), h3, 1e-12 * (1 + std::abs(h3)));
        }
}

TEST(HermitePoly, RecurrenceEqualsClosedSum) {
    Rng rng(21);
    for (double nu : {1.0, two_pi})
        for (int n = 0; n <= 12; ++n)
            for (int i = 0; i < 20; ++i) {
                double x = rng.uniform(-2, 2);
                double a = hermite_poly(n, nu, x), b = hermite_poly_explicit(n, nu, x);
                double scale = std::abs(hermite_poly(n, nu, 2.0)) + std::abs(a);
                EXPECT_LT(std::abs(a - b) / scale, 1e-12) << "n=" << n << " nu=" << nu;
            }
}

// The explicit sum without the nu^m weight, j! sum (-1)^m (4 pi y)^{j-2m}/(m!(j-2m)!),
// agrees with the recurrence only for j <= 1.
TEST(HermitePoly, UnweightedClosedSumDisagreesFromOrderTwo) {
    auto unweighted = [](int j, double y) {
        double s = 0;
        for (int m = 0; 2 * m <= j; ++m)
            s += ((m % 2) ? -1.0 : 1.0) * std::pow(4 * pi * y, j - 2 * m) / (factorial(m) * factorial(j - 2 * m));
        return factorial(j) * s;
    };
    double y = 0.3;
    EXPECT_NEAR(unweighted(0, y), hermite_poly(0, two_pi, y), 1e-14);
    EXPECT_NEAR(unweighted(1, y), hermite_poly(1, two_pi, y), 1e-14);
    for (int j = 2; j <= 4; ++j) {
        double d = unweighted(j, y) - hermite_poly(j, two_pi, y);
        std::printf("unweighted closed sum, n=%d, y=%.1f: differs from recurrence by %.6g\n", j, y, d);
        EXPECT_GT(std::abs(d), 1e-3);
    }
    // n = 2: 16 pi^2 y^2 - 2 against 16 pi^2 y^2 - 4 pi
    EXPECT_NEAR(unweighted(2, y) - hermite_poly(2, two_pi, y), 4 * pi - 2, 1e-12);
}

TEST(HermitePoly, DerivativeIdentity) {
    Rng rng(22);
    for (double nu : {1.0, two_pi})
        for (int n = 1; n <= 10; ++n)
            for (int i = 0; i < 10; ++i) {
                double x = rng.uniform(-1.5, 1.5), h = 1e-3;
                auto f = [&](double t) { return hermite_poly(n, nu, t); };
                double fd = (8 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12 * h);
                double d = hermite_poly_derivative(n, nu, x);
                EXPECT_LT(std::abs(fd - d) / (std::abs(d) + std::abs(hermite_poly_derivative(n, nu, 1.5))), 1e-8);
            }
}

TEST(HermiteFn, NormsByQuadrature) {
    for (double nu : {1.0, two_pi})
        for (int n = 0; n <= 10; ++n) {
            double L = std::sqrt(2.0 * (2 * n + 1) / nu) + 6 / std::sqrt(nu);
            auto res = integrate_1d(
                [&](double x) {
                    double h = hermite_poly(n, nu, x) * std::exp(-0.5 * nu * x * x);
                    return h * h;
                },
                QuadratureSpec{RuleKind::gauss_legendre, -L, L, 256});
            EXPECT_LT(relative_error(res.value, hermite_norm_sq(n, nu)), 1e-10) << "n=" << n;
        }
}

TEST(HermiteFn, MatchesPolynomialTimesGaussian) {
    for (int n = 0; n <= 12; ++n)
        for (double x : {-1.1, 0.2, 0.9}) {
            double direct = hermite_poly(n, 1.7, x) * std::exp(-0.85 * x * x);
            EXPECT_NEAR(hermite_fn(n, 1.7, x), direct, 1e-11 * (1 + std::abs(direct)));
        }
}

TEST(Window, KnownValues) {
    for (double t : {-0.7, 0.0, 0.3, 1.9}) EXPECT_NEAR(window(0, t), std::pow(2, 0.25) * std::exp(-pi * t * t), 1e-15);
    EXPECT_NEAR(window(2, 0), -std::pow(2, -0.25), 1e-15);
    // -4 pi (2^2 (2pi)^2 2! 2^{-1/2})^{-1/2}
    EXPECT_NEAR(window(2, 0), -4 * pi / std::sqrt(4 * 4 * pi * pi * 2 / std::sqrt(2)), 1e-15);
    EXPECT_EQ(window(1, 0), 0);
}

TEST(Window, OrthonormalIncludingHighOrders) {
    Rule r = make_rule(QuadratureSpec{RuleKind::gauss_legendre, -9, 9, 1024});
    for (int j : {0, 1, 5, 20, 60})
        for (int k : {0, 1, 5, 20, 60}) {
            double s = apply_rule([&](double t) { return window(j, t) * window(k, t); }, r);
            EXPECT_NEAR(s, j == k ? 1.0 : 0.0, 1e-10) << j << "," << k;
        }
    EXPECT_TRUE(std::isfinite(window(200, 3.0)));
}

TEST(Window, VectorMatchesScalar) {
    auto v = windows(12, 0.37);
    for (int k = 0; k <= 12; ++k) EXPECT_DOUBLE_EQ(v[k], window(k, 0.37));
}

TEST(ComplexHermite, LowOrders) {
    Rng rng(23);
    for (int it = 0; it < 20; ++it) {
        std::complex<double> z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        double a = it % 2 ? 1.0 : two_pi;
        for (int p = 0; p <= 5; ++p) {
            auto h0 = complex_hermite(0, p, a, z);
            EXPECT_LT(std::abs(h0 - std::pow(a, p) * std::pow(z, p)), 1e-11 * std::pow(a, p));
            auto h1 = complex_hermite(1, p, a, z);
            auto expect = std::pow(a, p + 1) * std::conj(z) * std::pow(z, p) - (p ? std::pow(a, p) * double(p) * std::pow(z, p - 1) : 0.0);
            EXPECT_LT(std::abs(h1 - expect), 1e-11 * std::pow(a, p + 1));
        }
    }
    Quaternion q{0.2, -0.3, 0.5, 0.1};
    EXPECT_LT(abs(complex_hermite(1, 0, two_pi, q) - two_pi * conj(q)), 1e-14);
}

TEST(ComplexHermite, OrthogonalityOnThePlane) {
    for (double a : {1.0, two_pi}) {
        Rule2D rule = make_rule(PolarSpec{std::sqrt(60 / a), 96, 32});
        for (int m = 0; m <= 4; ++m)
            for (int p = 0; p <= 4; ++p)
                for (int m2 = 0; m2 <= 4; m2 += 2)
                    for (int p2 = 0; p2 <= 4; p2 += 3) {
                        std::complex<double> s = 0;
                        for (std::size_t i = 0; i < rule.size(); ++i) {
                            std::complex<double> z{rule.u[i], rule.v[i]};
                            s += rule.weights[i] * std::exp(-a * std::norm(z)) * std::conj(complex_hermite(m2, p2, a, z)) *
                                 complex_hermite(m, p, a, z);
                        }
                        double n1 = pi * std::pow(a, p + m - 1) * factorial(m) * factorial(p);
                        double n2 = pi * std::pow(a, p2 + m2 - 1) * factorial(m2) * factorial(p2);
                        double expect = (m == m2 && p == p2) ? n1 : 0;
                        EXPECT_LT(std::abs(s - expect) / std::sqrt(n1 * n2), 1e-10);
                    }
    }
}

TEST(ComplexHermite, PolarFormAndSliceEvaluation) {
    Rng rng(24);
    for (int it = 0; it < 50; ++it) {
        int m = it % 4, p = m + it % 3;
        double r = rng.uniform(0.1, 1.4), th = rng.uniform(-pi, pi);
        auto a = complex_hermite(m, p, two_pi, std::polar(r, th));
        auto b = complex_hermite_polar(m, p, two_pi, r, th);
        EXPECT_LT(std::abs(a - b), 1e-10 * (1 + std::abs(a)));
        ImaginaryUnit I = rng.unit();
        std::complex<double> z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        EXPECT_LT(abs(complex_hermite(m, p, two_pi, I.lift(z)) - I.lift(complex_hermite(m, p, two_pi, z))),
                  1e-11 * (1 + std::abs(complex_hermite(m, p, two_pi, z))));
    }
    EXPECT_THROW(complex_hermite_polar(3, 1, 1.0, 0.5, 0.1), std::invalid_argument);
}

TEST(Laguerre, LowOrdersAndOrthogonality) {
    for (double b : {0.0, 0.5, 3.0})
        for (double x : {0.0, 0.7, 2.5}) {
            EXPECT_EQ(laguerre(0, b, x), 1);
            EXPECT_NEAR(laguerre(1, b, x), 1 + b - x, 1e-14);
            EXPECT_NEAR(laguerre(2, b, x), (x * x - 2 * (b + 2) * x + (b + 1) * (b + 2)) / 2, 1e-13);
        }
    for (double g : {0.0, 1.0, 2.5})
        for (int k = 0; k <= 4; ++k)
            for (int j = 0; j <= 4; ++j) {
                auto res = integrate_1d(
                    [&](double s) {
                        double t = s * s;
                        return 2 * s * std::pow(t, g) * std::exp(-t) * laguerre(k, g, t) * laguerre(j, g, t);
                    },
                    QuadratureSpec{RuleKind::gauss_legendre, 0, 10, 256});
                double expect = j == k ? std::tgamma(g + k + 1) / factorial(k) : 0;
                EXPECT_NEAR(res.value, expect, 1e-10 * std::tgamma(g + k + 1));
            }
    EXPECT_THROW(laguerre(2, -1.5, 0.3), std::invalid_argument);
}

TEST(GeneratingFunction, PartialSumsConverge) {
    for (double nu : {1.0, two_pi})
        for (double x : {-0.8, 0.1, 0.9})
            for (double lam : {-0.4, 0.25}) {
                double exact = std::exp(-nu * lam * lam + 2 * nu * x * lam);
                EXPECT_LT(relative_error(generating_partial_sum(80, nu, x, lam), exact), 1e-12);
            }
    EXPECT_EQ(generating_partial_sum(1, 2.0, 0.3, 0.5), 1);
}

TEST(Hermite, RejectsBadArguments) {
    EXPECT_THROW(hermite_poly(-1, 1, 0), std::invalid_argument);
    EXPECT_THROW(hermite_poly(2, 0, 0), std::invalid_argument);
    EXPECT_THROW(window(-2, 0), std::invalid_argument);
    EXPECT_THROW(complex_hermite(-1, 0, 1.0, std::complex<double>(0)), std::invalid_argument);
    EXPECT_THROW(complex_hermite(1, 0, -1.0, std::complex<double>(0)), std::invalid_argument);
}
