#include <gtest/gtest.h>

#include <cstdlib>

#include <qtfa/numerics.hpp>
#include <qtfa/random.hpp>

using namespace qtfa;

TEST(GaussLegendre, ExactForPolynomials) {
    Rule r = gauss_legendre(32);
    ASSERT_EQ(r.size(), 32u);
    double wsum = 0;
    for (double w : r.weights) wsum += w;
    EXPECT_NEAR(wsum, 2, 1e-14);
    for (int d = 0; d <= 63; d += 2) {
        double s = 0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
        EXPECT_NEAR(s, 2.0 / (d + 1), 1e-14) << "degree " << d;
    }
    Rule odd = gauss_legendre(5);
    EXPECT_EQ(odd.nodes[2], 0);
}

TEST(Quadrature, GaussianOnInterval) {
    auto res = integrate_1d([](double x) { return std::exp(-x * x); }, QuadratureSpec{RuleKind::gauss_legendre, -10, 10, 128});
    EXPECT_NEAR(res.value, std::sqrt(pi), 1e-13);
    EXPECT_TRUE(res.converged);
    EXPECT_LT(res.error_estimate, 1e-12);
}

TEST(Quadrature, TrapezoidOnPeriodicFunction) {
    auto res = integrate_1d([](double t) { return std::cos(t) * std::cos(t); },
                            QuadratureSpec{RuleKind::trapezoid, 0, two_pi, 33});
    EXPECT_NEAR(res.value, pi, 1e-13);
}

TEST(Quadrature, NonConvergenceIsFlagged) {
    auto res = integrate_1d([](double x) { return std::sin(400 * x); }, QuadratureSpec{RuleKind::gauss_legendre, 0, 1.3, 16}, 1e-6);
    EXPECT_FALSE(res.converged);
}

TEST(Quadrature, RejectsBadSpecs) {
    auto f = [](double x) { return x; };
    EXPECT_THROW(integrate_1d(f, QuadratureSpec{RuleKind::gauss_legendre, 0, 1, 8}), input_error);
    EXPECT_THROW(integrate_1d(f, QuadratureSpec{RuleKind::gauss_legendre, 0, INFINITY, 64}), input_error);
    EXPECT_THROW(integrate_1d(f, QuadratureSpec{RuleKind::gauss_legendre, 1, 0, 64}), input_error);
    EXPECT_THROW(make_rule(PolarSpec{0, 64, 64}), input_error);
}

TEST(Quadrature, FockWeightHasMassOneHalf) {
    auto res = integrate_2d([](double u, double v) { return std::exp(-two_pi * (u * u + v * v)); }, PolarSpec{5, 64, 32});
    EXPECT_NEAR(res.value, 0.5, 1e-14);
}

TEST(Quadrature, TensorRectangle) {
    QuadratureSpec s{RuleKind::gauss_legendre, -8, 8, 64};
    auto res = integrate_2d([](double x, double y) { return x * x * y * y * std::exp(-x * x - y * y); }, TensorSpec{s, s});
    EXPECT_NEAR(res.value, pi / 4, 1e-13);
}

TEST(Wirtinger, HolomorphicAndAntiholomorphic) {
    std::complex<double> z{0.4, -0.7};
    auto cube = [](std::complex<double> w) { return w * w * w; };
    EXPECT_LT(std::abs(wirtinger_derivative(cube, z) - 3.0 * z * z), 1e-9);
    EXPECT_LT(std::abs(wirtinger_derivative([](std::complex<double> w) { return std::conj(w); }, z)), 1e-12);
    EXPECT_LT(std::abs(wirtinger_derivative([](std::complex<double> w) { return std::norm(w); }, z) - std::conj(z)), 1e-10);
    auto quart = [](std::complex<double> w) { return w * w * w * w; };
    EXPECT_LT(std::abs(wirtinger_derivative(quart, z, 2) - 12.0 * z * z), 1e-6);
}

TEST(Wirtinger, QuaternionSliceDerivative) {
    ImaginaryUnit I = ImaginaryUnit::from(1, 1, -1);
    Quaternion c{0.2, -1, 0.5, 0.3};
    auto f = [&](const Quaternion& q) { return q * q * c; };
    Quaternion q = I.lift({0.3, 0.8});
    EXPECT_LT(abs(wirtinger_derivative(f, q, I) - 2.0 * q * c), 1e-9);
}

TEST(Tolerances, LadderIsOrdered) {
    TolerancePolicy t;
    EXPECT_NO_THROW(t.validate());
    t.rel_cross_route = 1e-12;
    EXPECT_THROW(t.validate(), input_error);
}

TEST(Parallel, ResultIndependentOfThreadCount) {
    auto run = [] {
        std::vector<double> out(1000);
        parallel_for(out.size(), [&](std::size_t i) { out[i] = std::sin(0.001 * i) * std::exp(-1e-3 * i); });
        return out;
    };
    setenv("QTFA_THREADS", "1", 1);
    auto a = run();
    setenv("QTFA_THREADS", "4", 1);
    auto b = run();
    unsetenv("QTFA_THREADS");
    EXPECT_EQ(a, b);
}

TEST(Parallel, PropagatesExceptions) {
    setenv("QTFA_THREADS", "3", 1);
    EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                     if (i == 7) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
    unsetenv("QTFA_THREADS");
}

TEST(Combinatorics, BinomialAndFactorial) {
    EXPECT_EQ(binomial(10, 3), 120);
    EXPECT_DOUBLE_EQ(binomial(2.5, 2), 2.5 * 1.5 / 2);
    EXPECT_EQ(binomial(5, -1), 0);
    EXPECT_EQ(factorial(10), 3628800);
    EXPECT_NEAR(log_factorial(20), std::log(factorial(20)), 1e-12);
}
