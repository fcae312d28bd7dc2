#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sendov/inextensibility.hpp"
#include "sendov/variation.hpp"

using namespace sendov;

namespace {

constexpr double kPi = std::numbers::pi;

MonicPoly znz(int n) { return MonicPoly::from_roots(znz_zeros(n)); }

std::size_t nearest(std::span<const Complex> pts, Complex z) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (std::abs(pts[k] - z) < std::abs(pts[best] - z)) best = k;
    return best;
}

// Zeros in the disk of radius 0.9, well separated, with well separated critical points.
Geometry random_geometry(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        std::vector<Complex> zs(static_cast<std::size_t>(n));
        for (auto& z : zs) z = std::polar(0.9 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
        if (min_pairwise_gap(zs) < 0.15) continue;
        auto g = geometry_of(MonicPoly::from_roots(zs));
        if (min_pairwise_gap(g.crit) < 0.05 || crit_dist(g.crit, zs[0]) < 0.05) continue;
        bool close = false;
        for (const auto& w : g.crit) close = close || crit_dist(zs, w) < 0.05;
        if (!close) return g;
    }
}

// Critical points of the polynomial with the given zeros, matched to `like`.
std::vector<Complex> matched_crit(std::vector<Complex> zeros, std::span<const Complex> like) {
    const auto ws = critical_points(MonicPoly::from_roots(std::move(zeros)));
    std::vector<Complex> out;
    for (const auto& w : like) out.push_back(ws[nearest(ws, w)]);
    return out;
}

// Zeros of the polynomial with p(a) = 0 and p' = n prod (z - w_j), matched to `like`.
std::vector<Complex> matched_zeros(std::span<const Complex> crit, Complex a, std::span<const Complex> like) {
    const double n = static_cast<double>(crit.size() + 1);
    const Poly prim = Poly::from_roots(crit, n).antiderivative();
    const Poly p = prim - Poly(std::vector<Complex>{prim(a)});
    const auto zs = roots(MonicPoly::from_poly(p));
    std::vector<Complex> out;
    for (const auto& z : like) out.push_back(zs[nearest(zs, z)]);
    return out;
}

}  // namespace

TEST(ZeroByCrit, SquareExample) {
    const auto g = geometry_of(MonicPoly::from_roots({1.0, -1.0}));
    const auto m = zero_by_crit_sens(g, 0);
    ASSERT_EQ(m.rows(), 1);
    ASSERT_EQ(m.cols(), 1);
    EXPECT_LE(std::abs(m(0, 0) - 2.0), 1e-14);
}

TEST(ZeroByCrit, MatchesFiniteDifferences) {
    std::mt19937_64 rng(21);
    const double h = 1e-6;
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_geometry(rng, 3 + trial % 4);
        const std::size_t a = static_cast<std::size_t>(trial) % g.zeros.size();
        const auto m = zero_by_crit_sens(g, a);
        std::vector<Complex> others;
        for (std::size_t k = 0; k < g.zeros.size(); ++k)
            if (k != a) others.push_back(g.zeros[k]);
        for (std::size_t l = 0; l < g.crit.size(); ++l) {
            auto up = g.crit, down = g.crit;
            up[l] += h;
            down[l] -= h;
            const auto zu = matched_zeros(up, g.zeros[a], others), zd = matched_zeros(down, g.zeros[a], others);
            for (std::size_t k = 0; k < others.size(); ++k) {
                const Complex fd = (zu[k] - zd[k]) / (2.0 * h);
                const Complex an = m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
                EXPECT_LE(std::abs(fd - an), 1e-5 * (1.0 + std::abs(an))) << "trial " << trial;
            }
        }
    }
}

TEST(CritByZero, ZnzOriginColumn) {
    for (int n = 4; n <= 10; ++n) {
        const auto m = crit_by_zero_sens(geometry_of(znz(n)));
        for (Eigen::Index j = 0; j < m.rows(); ++j) EXPECT_LE(std::abs(m(j, 0) - 1.0 / n), 1e-12) << "n " << n;
    }
}

TEST(CritByZero, MatchesFiniteDifferences) {
    std::mt19937_64 rng(22);
    const double h = 1e-6;
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_geometry(rng, 3 + trial % 4);
        const auto m = crit_by_zero_sens(g);
        for (std::size_t i = 0; i < g.zeros.size(); ++i) {
            auto up = g.zeros, down = g.zeros;
            up[i] += h;
            down[i] -= h;
            const auto wu = matched_crit(up, g.crit), wd = matched_crit(down, g.crit);
            for (std::size_t j = 0; j < g.crit.size(); ++j) {
                const Complex fd = (wu[j] - wd[j]) / (2.0 * h);
                const Complex an = m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
                EXPECT_LE(std::abs(fd - an), 1e-5 * (1.0 + std::abs(an))) << "trial " << trial;
            }
        }
    }
}

TEST(CritByZero, TranslationInvariance) {
    // Moving every zero by the same amount moves every critical point by it.
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = crit_by_zero_sens(random_geometry(rng, 3 + trial % 5));
        for (Eigen::Index j = 0; j < m.rows(); ++j) EXPECT_LE(std::abs(m.row(j).sum() - 1.0), 1e-9);
    }
}

TEST(Sensitivities, ComposeToIdentity) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_geometry(rng, 3 + trial % 5);
        const std::size_t a = static_cast<std::size_t>(trial) % g.zeros.size();
        const CMatrix z = zero_by_crit_sens(g, a);
        const CMatrix c = crit_by_zero_sens(g);
        CMatrix c_free(c.rows(), c.cols() - 1);
        Eigen::Index col = 0;
        for (Eigen::Index k = 0; k < c.cols(); ++k)
            if (static_cast<std::size_t>(k) != a) c_free.col(col++) = c.col(k);
        const CMatrix prod = z * c_free;
        EXPECT_LE((prod - CMatrix::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff(), 1e-8) << "trial " << trial;
    }
}

TEST(CauchyLikeDet, SquareExample) {
    EXPECT_NEAR(std::abs(cauchy_like_det(geometry_of(MonicPoly::from_roots({1.0, -1.0})))), 1.0, 1e-14);
}

TEST(CauchyLikeDet, NonzeroAndRelabelInvariant) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = random_geometry(rng, 2 + trial % 7);
        const double det = std::abs(cauchy_like_det(g));
        EXPECT_GT(det, 1e-8);
        if (g.zeros.size() >= 3) {
            std::swap(g.zeros[0], g.zeros[1]);
            EXPECT_NEAR(std::abs(cauchy_like_det(g)), det, 1e-9 * (1.0 + det));
        }
    }
}

TEST(AlphaCoeffs, ZnzClosedForm) {
    for (int n = 4; n <= 8; ++n) {
        const auto g = geometry_of(znz(n));
        const auto al = alpha_coeffs(g, std::size_t{0});
        ASSERT_EQ(al.crit_rows.size(), static_cast<std::size_t>(n - 1));
        for (std::size_t row = 0; row < al.crit_rows.size(); ++row) {
            const Complex w = g.crit[al.crit_rows[row]];
            const auto r = static_cast<Eigen::Index>(row);
            EXPECT_LE(std::abs(al.alpha(r, 0) * w + (n - 1.0) / n), 1e-12);
            for (std::size_t c = 1; c < al.column_zero.size(); ++c) {
                const Complex z = g.zeros[al.column_zero[c]];
                const Complex want = w / (static_cast<double>(n) * (w - z) * (w - z));
                EXPECT_LE(std::abs(al.alpha(r, static_cast<Eigen::Index>(c)) - want), 1e-12);
            }
        }
    }
}

TEST(AlphaCoeffs, FirstOrderPredictionConverges) {
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 20; ++trial) {
        const auto g = random_geometry(rng, 3 + trial % 4);
        const auto al = alpha_coeffs(g, std::size_t{0});
        if (al.crit_rows.size() != 1) continue;
        std::vector<Complex> dir(g.zeros.size());
        for (auto& v : dir) v = {u(rng), u(rng)};
        auto discrepancy = [&](double t) {
            std::vector<Complex> e(dir.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = t * dir[i];
            const auto pe = perturb(g, e);
            Complex lin{};
            for (std::size_t c = 0; c < al.column_zero.size(); ++c) lin += al.alpha(0, static_cast<Eigen::Index>(c)) * e[al.column_zero[c]];
            const double actual = std::abs(pe.crit[al.crit_rows[0]] - pe.zeros[0]);
            return std::abs(actual - al.radius * (1.0 + lin.real()));
        };
        const double d1 = discrepancy(1e-3), d2 = discrepancy(5e-4);
        EXPECT_GE(std::log2(d1 / d2), 1.8) << "trial " << trial;
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(BuildA, ZnzShape) {
    for (int n : {4, 5}) {
        const auto g = geometry_of(znz(n));
        const auto A = build_A(g, 0);
        EXPECT_EQ(A.a.rows(), 2 * (n - 1));
        EXPECT_EQ(A.a.cols(), n);
        EXPECT_EQ(A.r, static_cast<std::size_t>(n - 1));
        ASSERT_EQ(A.boundary_columns.size(), static_cast<std::size_t>(n - 1));
        // znz_zeros puts the zero 1 at label 1, which is column 1.
        EXPECT_LE(std::abs(A.a(static_cast<Eigen::Index>(A.r), 1) + 1.0), 1e-15);
    }
}

TEST(PositiveSingularity, OneByOne) {
    CMatrix m(1, 1);
    m(0, 0) = 1.0;
    const auto c = is_positively_singular(m);
    ASSERT_EQ(c.kind, CertificateKind::improving_direction);
    EXPECT_NEAR(c.lp_value, 1.0, 1e-12);
    EXPECT_GT(min_real_part(m, c.x), 0.0);
}

TEST(PositiveSingularity, ZeroRow) {
    CMatrix m(2, 2);
    m << Complex(1.0, 2.0), Complex(0.5, 0.0), Complex{}, Complex{};
    const auto c = is_positively_singular(m);
    ASSERT_EQ(c.kind, CertificateKind::singular_weights);
    EXPECT_EQ(c.mu[1], 1.0);
    EXPECT_EQ(weights_residual(m, c.mu), 0.0);
}

TEST(PositiveSingularity, OppositeRowsAreSingular) {
    CMatrix m(2, 3);
    m << Complex(1.0, 2.0), Complex(0.5, -1.0), 3.0, Complex(-1.0, -2.0), Complex(-0.5, 1.0), -3.0;
    const auto c = is_positively_singular(m);
    ASSERT_EQ(c.kind, CertificateKind::singular_weights);
    EXPECT_NEAR(c.mu[0], 0.5, 1e-12);
    EXPECT_LE(weights_residual(m, c.mu), 1e-12);
}

TEST(PositiveSingularity, ZnzMatricesAreSingular) {
    for (int n = 3; n <= 12; ++n) {
        const auto A = build_A(geometry_of(znz(n)), 0);
        const auto c = is_positively_singular(A.a);
        ASSERT_EQ(c.kind, CertificateKind::singular_weights) << "n " << n;
        EXPECT_LE(weights_residual(A.a, c.mu), 1e-9);
        double total = 0.0;
        for (double v : c.mu) {
            EXPECT_GE(v, 0.0);
            total += v;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        // Reordering rows does not change the verdict.
        const CMatrix flipped = A.a.colwise().reverse();
        EXPECT_EQ(is_positively_singular(flipped).kind, CertificateKind::singular_weights);
    }
}

TEST(PositiveSingularity, StrongDualityOnRandomMatrices) {
    std::mt19937_64 rng(27);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index rows = 1 + trial % 6, cols = 1 + trial % 4;
        CMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
        const auto primal = solve_primal(m);
        const auto dual = solve_dual(m);
        EXPECT_NEAR(primal.t, dual.value, 1e-9 * (1.0 + dual.value)) << "trial " << trial;
        EXPECT_NEAR(min_real_part(m, primal.x), primal.t, 1e-9);
        for (const auto& x : primal.x) EXPECT_LE(std::max(std::abs(x.real()), std::abs(x.imag())), 1.0 + 1e-12);
        // Any vector in the box gives a lower bound on t; weights give an upper bound.
        std::vector<Complex> probe(static_cast<std::size_t>(cols));
        for (auto& x : probe) x = {std::tanh(g(rng)), std::tanh(g(rng))};
        EXPECT_LE(min_real_part(m, probe), primal.t + 1e-12);
    }
}

TEST(Classifier, ZnzIsInextensible) {
    for (int n = 3; n <= 12; ++n) {
        const auto rep = classify_inextensible(znz(n));
        EXPECT_EQ(rep.verdict, Inextensibility::linearly_inextensible) << "n " << n;
        ASSERT_EQ(rep.zeros.size(), 1u);
        EXPECT_LE(std::abs(rep.zeros[0].zero), 1e-14);
    }
}

TEST(Classifier, DoubleCriticalPointIsInapplicable) {
    const auto rep = classify_inextensible(MonicPoly::from_coeffs({0.0, 1.0, std::sqrt(3.0)}));
    EXPECT_EQ(rep.verdict, Inextensibility::inapplicable);
}

TEST(Classifier, SmallDegreeAndOutsideDiskAreInapplicable) {
    EXPECT_EQ(classify_inextensible(MonicPoly::from_roots({0.5, -0.5})).verdict, Inextensibility::inapplicable);
    EXPECT_EQ(classify_inextensible(MonicPoly::from_roots({0.0, 0.5, 1.5})).verdict, Inextensibility::inapplicable);
}

TEST(Classifier, InextensibilityDoesNotImplyLocalMaximum) {
    const auto base = cubic_witness(0.0);
    EXPECT_EQ(classify_inextensible(base).verdict, Inextensibility::linearly_inextensible);
    EXPECT_GT(sendov_d(cubic_witness(0.1)).value, sendov_d(base).value);
}

TEST(Classifier, ExtensionDirectionIncreasesD) {
    std::mt19937_64 rng(28);
    int seen = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = random_geometry(rng, 3 + trial % 4);
        const auto rep = classify_inextensible(g.poly);
        if (rep.verdict != Inextensibility::linearly_extensible) continue;
        ++seen;
        const ZeroCertificate* zc = nullptr;
        for (const auto& z : rep.zeros)
            if (z.certificate.kind == CertificateKind::improving_direction) zc = &z;
        ASSERT_NE(zc, nullptr);
        const double t = 1e-6;
        std::vector<Complex> moved(g.zeros);
        for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += t * zc->extension[i];
        EXPECT_GT(sendov_d(MonicPoly::from_roots(moved)).value, rep.d) << "trial " << trial;
    }
    EXPECT_GT(seen, 20);
}
