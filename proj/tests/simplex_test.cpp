#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <limits>
#include <random>

#include "sendov/simplex.hpp"

using namespace sendov;

namespace {

// Minimum over all basic feasible solutions; exhaustive over column subsets.
double vertex_enumeration(const lp::Problem& p) {
    const auto m = static_cast<Eigen::Index>(p.rows);
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> pick(p.cols, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(p.rows), true);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) b(i) = p.b[static_cast<std::size_t>(i)];
    do {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < p.cols; ++j)
            if (pick[j]) cols.push_back(j);
        Eigen::MatrixXd B(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index k = 0; k < m; ++k) B(i, k) = p.at(static_cast<std::size_t>(i), cols[static_cast<std::size_t>(k)]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd x = lu.solve(b);
        if (x.minCoeff() < -1e-12) continue;
        double obj = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) obj += p.c[cols[static_cast<std::size_t>(k)]] * x(k);
        best = std::min(best, obj);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

}  // namespace

TEST(Simplex, SmallBoundedProblem) {
    // min -x - 2y  s.t.  x + y + s = 4,  y + u = 3.
    lp::Problem p(2, 4);
    p.at(0, 0) = 1.0;
    p.at(0, 1) = 1.0;
    p.at(0, 2) = 1.0;
    p.at(1, 1) = 1.0;
    p.at(1, 3) = 1.0;
    p.b = {4.0, 3.0};
    p.c = {-1.0, -2.0, 0.0, 0.0};
    const auto s = lp::minimize(p);
    EXPECT_NEAR(s.objective, -7.0, 1e-12);
    EXPECT_NEAR(s.x[0], 1.0, 1e-12);
    EXPECT_NEAR(s.x[1], 3.0, 1e-12);
}

TEST(Simplex, InfeasibleThrows) {
    lp::Problem p(1, 2);
    p.at(0, 0) = 1.0;
    p.at(0, 1) = 1.0;
    p.b = {-1.0};
    EXPECT_THROW(lp::minimize(p), LpError);
}

TEST(Simplex, UnboundedThrows) {
    lp::Problem p(1, 2);
    p.at(0, 0) = 1.0;
    p.at(0, 1) = -1.0;
    p.c = {-1.0, 0.0};
    EXPECT_THROW(lp::minimize(p), LpError);
}

TEST(Simplex, DegenerateCyclingExampleTerminates) {
    // Beale's example; Dantzig's rule cycles on it.
    lp::Problem p(3, 7);
    const double rows[3][7] = {{1, 0, 0, 0.25, -8, -1, 9}, {0, 1, 0, 0.5, -12, -0.5, 3}, {0, 0, 1, 0, 0, 1, 0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 7; ++j) p.at(i, j) = rows[i][j];
    p.b = {0.0, 0.0, 1.0};
    p.c = {0, 0, 0, -0.75, 20, -0.5, 6};
    const auto s = lp::minimize(p);
    EXPECT_NEAR(s.objective, -1.25, 1e-12);
}

TEST(Simplex, RedundantRowsAreTolerated) {
    lp::Problem p(2, 2);
    p.at(0, 0) = 1.0;
    p.at(0, 1) = 1.0;
    p.at(1, 0) = 2.0;
    p.at(1, 1) = 2.0;
    p.b = {1.0, 2.0};
    p.c = {1.0, 3.0};
    EXPECT_NEAR(lp::minimize(p).objective, 1.0, 1e-12);
}

TEST(Simplex, MatchesVertexEnumeration) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = 2 + trial % 3, n = m + 3 + trial % 3;
        lp::Problem p(m, n);
        std::vector<double> x0(n);
        for (auto& v : x0) v = u(rng) < 0.3 ? 0.0 : u(rng);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) p.at(i, j) = g(rng);
            for (std::size_t j = 0; j < n; ++j) p.b[i] += p.at(i, j) * x0[j];
        }
        for (auto& c : p.c) c = 0.1 + u(rng);
        const double want = vertex_enumeration(p);
        const auto s = lp::minimize(p);
        EXPECT_NEAR(s.objective, want, 1e-9 * (1.0 + std::abs(want))) << "trial " << trial;
        for (double v : s.x) EXPECT_GE(v, -1e-12);
    }
}
