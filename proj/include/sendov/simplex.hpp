#pragma once

// Two-phase revised simplex for  min c.x  s.t.  A x = b, x >= 0.
// Bland's rule throughout. The basis is refactorized at every pivot, which
// costs little at the sizes used here (below ~100 x 150) and keeps the
// iterates feasible to working precision.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "sendov/errors.hpp"

namespace sendov::lp {

struct Problem {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;  // row-major rows x cols
    std::vector<double> b;
    std::vector<double> c;

    Problem(std::size_t m, std::size_t n) : rows(m), cols(n), a(m * n, 0.0), b(m, 0.0), c(n, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct Solution {
    std::vector<double> x;
    double objective = 0.0;
    int pivots = 0;
};

namespace detail {

class Revised {
public:
    // Columns: structural, then one artificial per row.
    explicit Revised(const Problem& p)
        : m_(p.rows), n_(p.cols), a_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p.rows),
                                                           static_cast<Eigen::Index>(p.cols + p.rows))),
          b_(static_cast<Eigen::Index>(p.rows)), basis_(p.rows) {
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = p.b[i] < 0.0 ? -1.0 : 1.0;
            const auto r = static_cast<Eigen::Index>(i);
            for (std::size_t j = 0; j < n_; ++j) a_(r, static_cast<Eigen::Index>(j)) = sign * p.at(i, j);
            a_(r, static_cast<Eigen::Index>(n_ + i)) = 1.0;
            b_(r) = sign * p.b[i];
            basis_[i] = n_ + i;
        }
        refactor();
    }

    std::size_t width() const { return n_ + m_; }

    // Minimizes cost; columns >= limit never enter.
    int optimize(const Eigen::VectorXd& cost, std::size_t limit, int max_pivots) {
        int pivots = 0;
        while (true) {
            const Eigen::VectorXd y = lu_.transpose().solve(basic_costs(cost));
            std::size_t enter = kNone;
            for (std::size_t j = 0; j < limit; ++j) {
                if (is_basic(j)) continue;
                const double red = cost(static_cast<Eigen::Index>(j)) - y.dot(a_.col(static_cast<Eigen::Index>(j)));
                if (red < -kCostTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == kNone) return pivots;
            const Eigen::VectorXd u = lu_.solve(a_.col(static_cast<Eigen::Index>(enter)));
            std::size_t leave = kNone;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double ui = u(static_cast<Eigen::Index>(i));
                if (ui <= kPivotTol) continue;
                const double ratio = std::max(0.0, xb_(static_cast<Eigen::Index>(i))) / ui;
                if (leave == kNone || ratio < best - kRatioTol) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + kRatioTol && basis_[i] < basis_[leave]) {
                    best = std::min(best, ratio);
                    leave = i;
                }
            }
            if (leave == kNone) throw LpError("simplex: objective unbounded");
            basis_[leave] = enter;
            refactor();
            if (++pivots > max_pivots) throw LpError("simplex: pivot limit reached");
        }
    }

    // Pivots basic artificials out of the basis where a structural column can
    // replace them; those left sit on redundant rows at zero level.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_));
            e(static_cast<Eigen::Index>(i)) = 1.0;
            const Eigen::VectorXd row = lu_.transpose().solve(e);
            std::size_t best = kNone;
            double mag = 1e-7;
            for (std::size_t j = 0; j < n_; ++j) {
                if (is_basic(j)) continue;
                const double v = std::abs(row.dot(a_.col(static_cast<Eigen::Index>(j))));
                if (v > mag) {
                    mag = v;
                    best = j;
                }
            }
            if (best != kNone) {
                basis_[i] = best;
                refactor();
            }
        }
    }

    double value(const Eigen::VectorXd& cost) const { return basic_costs(cost).dot(xb_); }

    std::vector<double> primal() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, xb_(static_cast<Eigen::Index>(i)));
        return x;
    }

    // max |A x - b| with artificials at zero, relative to 1 + max|b|.
    double feasibility_error(const std::vector<double>& x) const {
        Eigen::VectorXd xv = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_ + m_));
        for (std::size_t j = 0; j < n_; ++j) xv(static_cast<Eigen::Index>(j)) = x[j];
        return (a_ * xv - b_).cwiseAbs().maxCoeff() / (1.0 + b_.cwiseAbs().maxCoeff());
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    static constexpr double kPivotTol = 1e-9;
    static constexpr double kCostTol = 1e-11;
    static constexpr double kRatioTol = 1e-12;

    bool is_basic(std::size_t j) const { return std::find(basis_.begin(), basis_.end(), j) != basis_.end(); }

    Eigen::VectorXd basic_costs(const Eigen::VectorXd& cost) const {
        Eigen::VectorXd cb(static_cast<Eigen::Index>(m_));
        for (std::size_t i = 0; i < m_; ++i) cb(static_cast<Eigen::Index>(i)) = cost(static_cast<Eigen::Index>(basis_[i]));
        return cb;
    }

    void refactor() {
        Eigen::MatrixXd bm(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
        for (std::size_t i = 0; i < m_; ++i)
            bm.col(static_cast<Eigen::Index>(i)) = a_.col(static_cast<Eigen::Index>(basis_[i]));
        lu_.compute(bm);
        xb_ = lu_.solve(b_);
    }

    std::size_t m_, n_;
    Eigen::MatrixXd a_;
    Eigen::VectorXd b_;
    std::vector<std::size_t> basis_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    Eigen::VectorXd xb_;
};

}  // namespace detail

/// Solves min c.x s.t. A x = b, x >= 0. Throws LpError on infeasibility,
/// unboundedness, the pivot cap, or a final point that fails A x = b.
inline Solution minimize(const Problem& p, double feas_tol = 1e-9, int max_pivots = 20000) {
    detail::Revised lp(p);
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lp.width()));
    phase1.tail(static_cast<Eigen::Index>(p.rows)).setOnes();
    Solution s;
    s.pivots = lp.optimize(phase1, lp.width(), max_pivots);
    if (lp.value(phase1) > feas_tol) throw LpError("simplex: infeasible");
    lp.expel_artificials();
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lp.width()));
    for (std::size_t j = 0; j < p.cols; ++j) cost(static_cast<Eigen::Index>(j)) = p.c[j];
    s.pivots += lp.optimize(cost, p.cols, max_pivots);
    s.x = lp.primal();
    if (lp.feasibility_error(s.x) > feas_tol) throw LpError("simplex: final point violates the constraints");
    for (std::size_t j = 0; j < p.cols; ++j) s.objective += p.c[j] * s.x[j];
    return s;
}

}  // namespace sendov::lp
