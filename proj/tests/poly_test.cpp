#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "sendov/metrics.hpp"
#include "sendov/poly.hpp"

using namespace sendov;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_near(Complex a, Complex b, double tol) { EXPECT_LE(std::abs(a - b), tol) << a << " vs " << b; }

// Adaptive Simpson along the segment a -> z; independent of the closed-form primitive.
Complex segment_integral(const std::function<Complex(Complex)>& f, Complex a, Complex z) {
    const Complex dz = z - a;
    std::function<Complex(double, double, Complex, Complex, Complex, Complex, int)> rec =
        [&](double l, double r, Complex fl, Complex fm, Complex fr, Complex whole, int depth) -> Complex {
        const double m = 0.5 * (l + r);
        const Complex flm = f(a + 0.5 * (l + m) * dz), frm = f(a + 0.5 * (m + r) * dz);
        const Complex left = (m - l) / 6.0 * (fl + 4.0 * flm + fm), right = (r - m) / 6.0 * (fm + 4.0 * frm + fr);
        if (depth <= 0 || std::abs(left + right - whole) < 1e-14) return left + right + (left + right - whole) / 15.0;
        return rec(l, m, fl, flm, fm, left, depth - 1) + rec(m, r, fm, frm, fr, right, depth - 1);
    };
    const Complex f0 = f(a), f1 = f(z), fm = f(a + 0.5 * dz);
    return dz * rec(0.0, 1.0, f0, fm, f1, (f0 + 4.0 * fm + f1) / 6.0, 40);
}

std::vector<Complex> random_points(std::mt19937_64& rng, int n, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (auto& z : out) z = std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    return out;
}

}  // namespace

TEST(FromRoots, DifferenceOfSquares) {
    const auto p = MonicPoly::from_roots({1.0, -1.0});
    ASSERT_EQ(p.degree(), 2);
    expect_near(p.coeff(0), -1.0, 0.0);
    expect_near(p.coeff(1), 0.0, 0.0);
}

TEST(FromRoots, CubeRootsOfUnityWithOrigin) {
    const Complex w = std::polar(1.0, 2.0 * kPi / 3.0);
    const auto p = MonicPoly::from_roots({0.0, 1.0, w, w * w});
    const Complex want[] = {0.0, -1.0, 0.0, 0.0};
    for (int k = 0; k < 4; ++k) expect_near(p.coeff(k), want[k], 1e-15);
}

TEST(FromRoots, AllZeroRootsGivePower) {
    const auto p = MonicPoly::from_roots(std::vector<Complex>(5, 0.0));
    for (int k = 0; k < 5; ++k) EXPECT_EQ(p.coeff(k), Complex{});
    EXPECT_EQ(p.coeff(5), Complex{1.0});
}

TEST(FromRoots, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(MonicPoly::from_roots({}), std::invalid_argument);
    EXPECT_THROW(MonicPoly::from_roots({Complex{std::nan(""), 0.0}}), std::invalid_argument);
    EXPECT_THROW(MonicPoly::from_coeffs({Complex{INFINITY, 0.0}}), std::invalid_argument);
}

TEST(FromRoots, CachedRootsSatisfyResidualBound) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto zs = random_points(rng, 1 + trial % 12, 2.0);
        const auto p = MonicPoly::from_roots(zs);
        for (const auto& z : zs) EXPECT_LE(std::abs(p(z)), 1e-10 * (1.0 + p.max_coeff_modulus()));
    }
}

TEST(Derivative, PowerRule) {
    const auto d = derivative(MonicPoly::from_coeffs({0.0, -1.0, 0.0, 0.0}));
    ASSERT_EQ(d.degree(), 3);
    expect_near(d[0], -1.0, 0.0);
    expect_near(d[1], 0.0, 0.0);
    expect_near(d[2], 0.0, 0.0);
    expect_near(d[3], 4.0, 0.0);
}

TEST(Derivative, RotatedLinearTerm) {
    for (int n = 2; n <= 9; ++n) {
        const Complex e = std::polar(1.0, 0.3 * n);
        std::vector<Complex> c(static_cast<std::size_t>(n), 0.0);
        c[1] = e;
        const auto d = derivative(MonicPoly::from_coeffs(c));
        ASSERT_EQ(d.degree(), n - 1);
        expect_near(d[0], e, 0.0);
        expect_near(d[n - 1], static_cast<double>(n), 0.0);
        for (int k = 1; k < n - 1; ++k) EXPECT_EQ(d[k], Complex{});
    }
}

TEST(Derivative, Square) {
    const auto d = derivative(MonicPoly::from_coeffs({0.0, 0.0}));
    ASSERT_EQ(d.degree(), 1);
    expect_near(d[1], 2.0, 0.0);
    expect_near(d[0], 0.0, 0.0);
}

TEST(Derivative, LinearityAndDegreeDrop) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> a(7), b(7);
        for (auto& v : a) v = {g(rng), g(rng)};
        for (auto& v : b) v = {g(rng), g(rng)};
        const Poly p(a), q(b);
        const Complex s{g(rng), 0.0};
        const Poly lhs = (p + s * q).derivative();
        const Poly rhs = p.derivative() + s * q.derivative();
        ASSERT_EQ(lhs.degree(), 5);
        for (int k = 0; k <= 5; ++k) EXPECT_LE(std::abs(lhs[k] - rhs[k]), 1e-13 * (1.0 + std::abs(rhs[k])));
    }
}

TEST(Roots, CubicFactorization) {
    auto zs = roots(MonicPoly::from_coeffs({0.0, -1.0, 0.0}));
    std::sort(zs.begin(), zs.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    expect_near(zs[0], -1.0, 1e-14);
    expect_near(zs[1], 0.0, 1e-14);
    expect_near(zs[2], 1.0, 1e-14);
}

TEST(Roots, CriticalPointsOfZnzLieOnCircle) {
    for (int n = 2; n <= 30; ++n) {
        std::vector<Complex> c(static_cast<std::size_t>(n), 0.0);
        c[1] = -1.0;
        const auto ws = critical_points(MonicPoly::from_coeffs(c));
        ASSERT_EQ(ws.size(), static_cast<std::size_t>(n - 1));
        const double R = std::pow(1.0 / n, 1.0 / (n - 1));
        for (const auto& w : ws) EXPECT_NEAR(std::abs(w), R, 1e-12);
    }
}

TEST(Roots, DoubleRootAgreesWithQuadraticFormula) {
    // (z - 0.5)^2 = z^2 - z + 0.25; the quadratic formula gives 0.5 twice.
    const Complex b = -1.0, c = 0.25;
    const Complex disc = std::sqrt(b * b - 4.0 * c);
    const Complex r1 = (-b + disc) / 2.0, r2 = (-b - disc) / 2.0;
    const auto zs = roots(MonicPoly::from_coeffs({c, b}));
    ASSERT_EQ(zs.size(), 2u);
    for (const auto& z : zs) EXPECT_LE(std::min(std::abs(z - r1), std::abs(z - r2)), 1e-6);
}

TEST(Roots, RoundTripThroughCoefficients) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + trial % 12;
        const auto zs = random_points(rng, n, 2.0);
        const auto expanded = MonicPoly::from_roots(zs);
        const auto p = MonicPoly::from_coeffs({expanded.coeffs().begin(), expanded.coeffs().end()});
        ASSERT_FALSE(p.cached_roots());
        const auto found = roots(p);
        EXPECT_LE(bottleneck_match(found, zs).value, 1e-8) << "trial " << trial;
        // Coefficient round trip of the recovered multiset.
        const auto back = MonicPoly::from_roots(found);
        for (int k = 0; k < n; ++k) EXPECT_LE(std::abs(back.coeff(k) - p.coeff(k)), 1e-8 * (1.0 + p.max_coeff_modulus()));
    }
}

TEST(Roots, Deterministic) {
    const auto p = MonicPoly::from_coeffs({0.3, Complex{0.1, -0.7}, 2.0, Complex{0.0, 1.0}, -0.4});
    const auto a = roots(p), b = roots(p);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Roots, CachedRootsReturnedVerbatim) {
    const std::vector<Complex> zs{0.25, Complex{0.0, 0.5}, -0.75};
    EXPECT_EQ(roots(MonicPoly::from_roots(zs)), zs);
}

TEST(Antiderivative, ConstantIntegrand) { expect_near(antiderivative_eval(Poly({1.0}), 0.0, Complex{0.0, 1.0}), Complex{0.0, 1.0}, 1e-15); }

TEST(Antiderivative, LinearIntegrand) {
    expect_near(antiderivative_eval(Poly({0.0, 2.0}), 0.0, Complex{1.0, 1.0}), Complex{0.0, 2.0}, 1e-15);
}

TEST(Antiderivative, MatchesQuadratureForCriticalQuotient) {
    const auto p = MonicPoly::from_coeffs({0.0, -1.0, 0.0, 0.0});
    const auto ws = critical_points(p);
    const Poly dp = derivative(p);
    for (std::size_t l = 0; l < ws.size(); ++l) {
        std::vector<Complex> others;
        for (std::size_t j = 0; j < ws.size(); ++j)
            if (j != l) others.push_back(ws[j]);
        const Poly q = Poly::from_roots(others, 4.0);
        for (const Complex z : {Complex{1.0, 0.0}, std::polar(1.0, 2.0 * kPi / 3.0), Complex{0.3, -0.8}}) {
            const Complex exact = antiderivative_eval(q, 0.0, z);
            const Complex quad = segment_integral([&](Complex w) { return dp(w) / (w - ws[l]); }, 0.0, z);
            EXPECT_LE(std::abs(exact - quad), 1e-10);
        }
    }
}

TEST(MonicPoly, RotationConjugate) {
    const double phi = 0.37;
    const auto p = MonicPoly::from_coeffs({0.0, 1.0, 0.0, 0.0});
    const auto q = p.rotated(phi);
    expect_near(q.coeff(1), std::polar(1.0, -3.0 * phi), 1e-15);
    for (const Complex z : {Complex{0.2, 0.1}, Complex{-0.7, 0.4}})
        expect_near(q(z), std::polar(1.0, -4.0 * phi) * p(std::polar(1.0, phi) * z), 1e-14);
}

TEST(MonicPoly, FromPolyNormalizesLeadingCoefficient) {
    const auto p = MonicPoly::from_poly(Poly({2.0, 0.0, 4.0}));
    ASSERT_EQ(p.degree(), 2);
    expect_near(p.coeff(0), 0.5, 0.0);
    EXPECT_THROW(MonicPoly::from_poly(Poly({3.0})), std::invalid_argument);
}

TEST(Poly, MinPairwiseGap) {
    const std::vector<Complex> pts{0.0, 1.0, Complex{0.0, 0.25}};
    EXPECT_DOUBLE_EQ(min_pairwise_gap(pts), 0.25);
    EXPECT_TRUE(std::isinf(min_pairwise_gap(std::vector<Complex>{1.0})));
}
