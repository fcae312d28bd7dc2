#pragma once

// First-order variational machinery: sensitivities of zeros and critical
// points, the variation matrix A(p; a), positive singularity by linear
// programming, and the linear-inextensibility classifier.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sendov/errors.hpp"
#include "sendov/metrics.hpp"
#include "sendov/poly.hpp"
#include "sendov/simplex.hpp"
#include "sendov/tolerances.hpp"

namespace sendov {

using CMatrix = Eigen::MatrixXcd;

/// A polynomial together with one fixed labelling of its zeros z_i and
/// critical points w_j. Every matrix below is indexed by these labels.
struct Geometry {
    MonicPoly poly;
    std::vector<Complex> zeros;
    std::vector<Complex> crit;

    int degree() const noexcept { return poly.degree(); }
};

inline Geometry geometry_of(const MonicPoly& p) {
    if (p.degree() < 2) throw std::invalid_argument("geometry_of: degree must be >= 2");
    return {p, roots(p), critical_points(p)};
}

inline bool has_simple_zeros(const Geometry& g, double simple_root_tol) {
    return min_pairwise_gap(g.zeros) > simple_root_tol && min_pairwise_gap(g.crit) > simple_root_tol;
}

namespace detail {

inline void require_simple(const Geometry& g, double simple_root_tol) {
    if (!has_simple_zeros(g, simple_root_tol))
        throw MultipleRootError("p or p' has a multiple zero (gap below simple_root_tol)");
}

// -p(w) / p''(w) at each critical point; shared by the closed forms below.
inline std::vector<Complex> crit_ratio(const Geometry& g) {
    const Poly pp = derivative(g.poly).derivative();
    std::vector<Complex> out(g.crit.size());
    for (std::size_t j = 0; j < g.crit.size(); ++j) out[j] = -g.poly(g.crit[j]) / pp(g.crit[j]);
    return out;
}

}  // namespace detail

/// d zeta_k / d omega_l for the zeros other than zeros[a_index] (rows, in label
/// order) against the critical points (columns). The integrand p'(w)/(w - w_l)
/// is the polynomial n prod_{j != l}(w - w_j), integrated exactly.
inline CMatrix zero_by_crit_sens(const Geometry& g, std::size_t a_index, double simple_root_tol = 1e-6) {
    detail::require_simple(g, simple_root_tol);
    const std::size_t n = g.zeros.size();
    if (a_index >= n) throw std::out_of_range("zero_by_crit_sens: a_index");
    const Complex a = g.zeros[a_index];
    const Poly dp = derivative(g.poly);
    CMatrix out(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
    for (std::size_t l = 0; l < g.crit.size(); ++l) {
        std::vector<Complex> others;
        for (std::size_t j = 0; j < g.crit.size(); ++j)
            if (j != l) others.push_back(g.crit[j]);
        const Poly integrand = Poly::from_roots(others, static_cast<double>(n));
        std::size_t row = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == a_index) continue;
            const Complex zk = g.zeros[k];
            out(static_cast<Eigen::Index>(row++), static_cast<Eigen::Index>(l)) =
                antiderivative_eval(integrand, a, zk) / dp(zk);
        }
    }
    return out;
}

/// d omega_j / d zeta_i = -p(w_j) / ((w_j - z_i)^2 p''(w_j)); rows are critical
/// points, columns zeros.
inline CMatrix crit_by_zero_sens(const Geometry& g, double simple_root_tol = 1e-6) {
    detail::require_simple(g, simple_root_tol);
    const auto ratio = detail::crit_ratio(g);
    CMatrix out(static_cast<Eigen::Index>(g.crit.size()), static_cast<Eigen::Index>(g.zeros.size()));
    for (std::size_t j = 0; j < g.crit.size(); ++j)
        for (std::size_t i = 0; i < g.zeros.size(); ++i) {
            const Complex d = g.crit[j] - g.zeros[i];
            out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = ratio[j] / (d * d);
        }
    return out;
}

/// det((z_i - w_j)^{-2}) over the first n-1 zeros; nonzero whenever p and p'
/// have simple zeros.
inline Complex cauchy_like_det(const Geometry& g, double simple_root_tol = 1e-6) {
    detail::require_simple(g, simple_root_tol);
    const auto m = static_cast<Eigen::Index>(g.crit.size());
    CMatrix b(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            const Complex d = g.zeros[static_cast<std::size_t>(i)] - g.crit[static_cast<std::size_t>(j)];
            b(i, j) = 1.0 / (d * d);
        }
    return b.determinant();
}

/// First-order coefficients of |w_j(e) - z_1(e)| / |p|_a for the critical
/// points on the a-critical circle. Column 0 is the zero a itself, the rest
/// follow label order (see column_zero).
struct AlphaCoefficients {
    CMatrix alpha;                          // r(a) x n
    std::vector<std::size_t> crit_rows;     // critical-point label of each row
    std::vector<std::size_t> column_zero;   // zero label of each column
    double radius = 0.0;                    // |p|_a
};

inline std::vector<std::size_t> column_order(std::size_t n, std::size_t a_index) {
    std::vector<std::size_t> cols{a_index};
    for (std::size_t i = 0; i < n; ++i)
        if (i != a_index) cols.push_back(i);
    return cols;
}

inline AlphaCoefficients alpha_coeffs(const Geometry& g, std::size_t a_index, const Tolerances& tol = {}) {
    detail::require_simple(g, tol.simple_root_tol);
    const std::size_t n = g.zeros.size();
    if (a_index >= n) throw std::out_of_range("alpha_coeffs: a_index");
    const Complex a = g.zeros[a_index];
    AlphaCoefficients out;
    out.radius = crit_dist(g.crit, a);
    out.column_zero = column_order(n, a_index);
    for (std::size_t j = 0; j < g.crit.size(); ++j)
        if (std::abs(g.crit[j] - a) <= out.radius * (1.0 + tol.crit_tie_tol)) out.crit_rows.push_back(j);

    const auto ratio = detail::crit_ratio(g);  // -p(w)/p''(w)
    out.alpha.resize(static_cast<Eigen::Index>(out.crit_rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t row = 0; row < out.crit_rows.size(); ++row) {
        const std::size_t j = out.crit_rows[row];
        const Complex wa = g.crit[j] - a;
        const auto r = static_cast<Eigen::Index>(row);
        out.alpha(r, 0) = -(1.0 - ratio[j] / (wa * wa)) / wa;
        for (std::size_t c = 1; c < n; ++c) {
            const Complex wz = g.crit[j] - g.zeros[out.column_zero[c]];
            out.alpha(r, static_cast<Eigen::Index>(c)) = ratio[j] / (wa * wz * wz);
        }
    }
    return out;
}

/// Overload locating a by its nearest zero; a must be a zero of p.
inline AlphaCoefficients alpha_coeffs(const Geometry& g, Complex a, const Tolerances& tol = {}) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < g.zeros.size(); ++i)
        if (std::abs(g.zeros[i] - a) < std::abs(g.zeros[best] - a)) best = i;
    if (std::abs(g.zeros[best] - a) > 1e-8 * (1.0 + std::abs(a)))
        throw PreconditionError("alpha_coeffs: a is not a zero of p");
    return alpha_coeffs(g, best, tol);
}

/// A(p; a): the r(a) alpha rows followed by one row -conj(z_s) per zero on
/// the unit circle.
struct VarMatrix {
    CMatrix a;
    std::size_t r = 0;
    std::vector<std::size_t> boundary_columns;  // the columns s_k
    std::vector<std::size_t> column_zero;
    std::vector<std::size_t> crit_rows;
};

inline VarMatrix build_A(const Geometry& g, std::size_t a_index, const Tolerances& tol = {}) {
    const auto al = alpha_coeffs(g, a_index, tol);
    VarMatrix out;
    out.r = al.crit_rows.size();
    out.column_zero = al.column_zero;
    out.crit_rows = al.crit_rows;
    for (std::size_t c = 0; c < al.column_zero.size(); ++c)
        if (std::abs(std::abs(g.zeros[al.column_zero[c]]) - 1.0) <= tol.boundary_tol) out.boundary_columns.push_back(c);
    const auto rows = static_cast<Eigen::Index>(out.r + out.boundary_columns.size());
    const auto cols = static_cast<Eigen::Index>(al.column_zero.size());
    out.a = CMatrix::Zero(rows, cols);
    out.a.topRows(static_cast<Eigen::Index>(out.r)) = al.alpha;
    for (std::size_t k = 0; k < out.boundary_columns.size(); ++k) {
        const std::size_t c = out.boundary_columns[k];
        out.a(static_cast<Eigen::Index>(out.r + k), static_cast<Eigen::Index>(c)) =
            -std::conj(g.zeros[al.column_zero[c]]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Positive singularity.

/// max_j |sum_i mu_i m_ij|.
inline double weights_residual(const CMatrix& m, std::span<const double> mu) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Complex s{};
        for (Eigen::Index i = 0; i < m.rows(); ++i) s += mu[static_cast<std::size_t>(i)] * m(i, j);
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

/// min_i Re((M x)_i).
inline double min_real_part(const CMatrix& m, std::span<const Complex> x) {
    double worst = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Complex s{};
        for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j) * x[static_cast<std::size_t>(j)];
        worst = std::min(worst, s.real());
    }
    return worst;
}

struct PrimalSolution {
    double t = 0.0;             // max t with Re(Mx) >= t on the box |Re x|, |Im x| <= 1
    std::vector<Complex> x;
};

struct DualSolution {
    double value = 0.0;         // min over the simplex of sum_j |Re c_j| + |Im c_j|, c = mu^T M
    std::vector<double> mu;
};

/// max t s.t. Re(Mx)_i >= t, x in the unit box. Box variables are split into
/// positive and negative parts so that nonbasic coordinates sit at 0.
inline PrimalSolution solve_primal(const CMatrix& m) {
    const auto rows = static_cast<std::size_t>(m.rows()), n = static_cast<std::size_t>(m.cols());
    const std::size_t box = 4 * n, t_col = box, slack0 = box + 1, boxslack0 = slack0 + rows;
    lp::Problem prob(rows + box, boxslack0 + box);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            prob.at(i, 4 * j + 0) = v.real();
            prob.at(i, 4 * j + 1) = -v.real();
            prob.at(i, 4 * j + 2) = -v.imag();
            prob.at(i, 4 * j + 3) = v.imag();
        }
        prob.at(i, t_col) = -1.0;
        prob.at(i, slack0 + i) = -1.0;
    }
    for (std::size_t k = 0; k < box; ++k) {
        prob.at(rows + k, k) = 1.0;
        prob.at(rows + k, boxslack0 + k) = 1.0;
        prob.b[rows + k] = 1.0;
    }
    prob.c[t_col] = -1.0;
    const auto sol = lp::minimize(prob);
    PrimalSolution out;
    out.t = sol.x[t_col];
    out.x.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        out.x[j] = {sol.x[4 * j] - sol.x[4 * j + 1], sol.x[4 * j + 2] - sol.x[4 * j + 3]};
    return out;
}

/// LP dual of solve_primal: nonnegative row weights summing to one that make
/// the real-embedded row combination as small as possible in the 1-norm.
inline DualSolution solve_dual(const CMatrix& m) {
    const auto rows = static_cast<std::size_t>(m.rows()), n = static_cast<std::size_t>(m.cols());
    const std::size_t aux0 = rows;  // p_k, q_k pairs for the 2n real coordinates
    lp::Problem prob(2 * n + 1, rows + 4 * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            const Complex v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            prob.at(2 * j, i) = v.real();
            prob.at(2 * j + 1, i) = v.imag();
        }
        for (std::size_t h = 0; h < 2; ++h) {
            const std::size_t k = 2 * j + h;
            prob.at(k, aux0 + 2 * k) = -1.0;
            prob.at(k, aux0 + 2 * k + 1) = 1.0;
            prob.c[aux0 + 2 * k] = 1.0;
            prob.c[aux0 + 2 * k + 1] = 1.0;
        }
    }
    for (std::size_t i = 0; i < rows; ++i) prob.at(2 * n, i) = 1.0;
    prob.b[2 * n] = 1.0;
    const auto sol = lp::minimize(prob);
    DualSolution out;
    out.value = sol.objective;
    out.mu.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(rows));
    double total = 0.0;
    for (double v : out.mu) total += v;
    for (double& v : out.mu) v /= total;
    return out;
}

enum class CertificateKind { singular_weights, improving_direction };

inline const char* to_string(CertificateKind k) {
    return k == CertificateKind::singular_weights ? "singular_weights" : "improving_direction";
}

struct PosSingCertificate {
    CertificateKind kind = CertificateKind::singular_weights;
    std::vector<double> mu;      // singular_weights
    std::vector<Complex> x;      // improving_direction
    double residual = 0.0;       // ||sum mu_i row_i||_inf, or min_i Re((Mx)_i)
    double lp_value = 0.0;       // optimal t of the primal
};

/// Decides whether some nonzero nonnegative row combination of M vanishes,
/// returning either the weights or a direction x with Re(Mx) > 0. Both LPs
/// are solved and must agree; disagreement raises LpError.
inline PosSingCertificate is_positively_singular(const CMatrix& m, double tol = 1e-9) {
    if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("is_positively_singular: empty matrix");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (m.row(i).isZero(0.0)) {
            PosSingCertificate c;
            c.mu.assign(static_cast<std::size_t>(m.rows()), 0.0);
            c.mu[static_cast<std::size_t>(i)] = 1.0;
            return c;
        }
    }
    const auto primal = solve_primal(m);
    const auto dual = solve_dual(m);
    const double wres = weights_residual(m, dual.mu);
    PosSingCertificate c;
    c.lp_value = primal.t;
    if (primal.t > tol) {
        c.kind = CertificateKind::improving_direction;
        c.x = primal.x;
        c.residual = min_real_part(m, c.x);
        if (!(c.residual > 0.0) || dual.value < 0.5 * primal.t)
            throw LpError("is_positively_singular: primal and dual verdicts disagree");
    } else {
        c.kind = CertificateKind::singular_weights;
        c.mu = dual.mu;
        c.residual = wres;
        if (wres > tol) throw LpError("is_positively_singular: primal and dual verdicts disagree");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Classifier.

enum class Inextensibility { linearly_inextensible, linearly_extensible, inapplicable };

inline const char* to_string(Inextensibility v) {
    switch (v) {
        case Inextensibility::linearly_inextensible: return "linearly_inextensible";
        case Inextensibility::linearly_extensible: return "linearly_extensible";
        case Inextensibility::inapplicable: return "inapplicable";
    }
    return "?";
}

struct ZeroCertificate {
    std::size_t zero_index = 0;
    Complex zero{};
    VarMatrix matrix;
    PosSingCertificate certificate;
    std::vector<Complex> extension;  // per zero label; nonempty iff improving_direction
};

struct InextensibilityReport {
    Inextensibility verdict = Inextensibility::inapplicable;
    std::string reason;
    double d = 0.0;
    std::vector<ZeroCertificate> zeros;
};

/// Certifies every zero with |p|_z = d(p) by positive singularity of A(p; z).
/// Multiple zeros of p or p', degree below 3, or zeros outside the closed
/// disk give the inapplicable verdict.
inline InextensibilityReport classify_inextensible(const MonicPoly& p, const Tolerances& tol = {}) {
    InextensibilityReport rep;
    if (p.degree() < 3) {
        rep.reason = "degree below 3";
        return rep;
    }
    const Geometry g = geometry_of(p);
    rep.d = sendov_d(g.zeros, g.crit).value;
    for (const auto& z : g.zeros) {
        if (std::abs(z) > 1.0 + tol.boundary_tol) {
            rep.reason = "zero outside the closed unit disk";
            return rep;
        }
    }
    if (!has_simple_zeros(g, tol.simple_root_tol)) {
        rep.reason = "p or p' has a multiple zero";
        return rep;
    }
    rep.verdict = Inextensibility::linearly_inextensible;
    for (std::size_t i = 0; i < g.zeros.size(); ++i) {
        if (crit_dist(g.crit, g.zeros[i]) < rep.d * (1.0 - tol.crit_tie_tol)) continue;
        ZeroCertificate zc;
        zc.zero_index = i;
        zc.zero = g.zeros[i];
        zc.matrix = build_A(g, i, tol);
        zc.certificate = is_positively_singular(zc.matrix.a, tol.pos_sing_tol);
        if (zc.certificate.kind == CertificateKind::improving_direction) {
            rep.verdict = Inextensibility::linearly_extensible;
            zc.extension.assign(g.zeros.size(), Complex{});
            for (std::size_t c = 0; c < zc.matrix.column_zero.size(); ++c)
                zc.extension[zc.matrix.column_zero[c]] = zc.certificate.x[c];
        }
        rep.zeros.push_back(std::move(zc));
    }
    return rep;
}

}  // namespace sendov
