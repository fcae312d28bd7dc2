#pragma once

// Second-order deformations of z^4 + z and z^5 + z, growth fitting of d along
// them, the jet re-derivation of the quartic deformation coefficients, and the
// first-order perturbation experiments around z^n - z.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sendov/errors.hpp"
#include "sendov/inextensibility.hpp"
#include "sendov/jet.hpp"
#include "sendov/metrics.hpp"
#include "sendov/parallel.hpp"
#include "sendov/poly.hpp"

namespace sendov {

enum class FamilyKind { quartic, quintic, custom };

/// One-parameter family a -> p_a with p_0 = baseline. tracked_zero(a) is the
/// zero whose critical distance is followed.
struct DeformationFamily {
    FamilyKind kind = FamilyKind::custom;
    std::function<MonicPoly(double)> eval;
    std::function<Complex(double)> tracked_zero;
    MonicPoly baseline = MonicPoly::from_coeffs({Complex{}});
    std::optional<double> predicted_c0;
    std::optional<double> predicted_c2;
};

// ---------------------------------------------------------------------------
// Quartic deformation of z^4 + z.

struct QuarticConstants {
    double r;       // |z^4 + z|_0 = 4^{-1/3}
    double alpha1;
    double alpha2;
    double y1;
    double y2;
    double C;       // growth constant of d
};

inline QuarticConstants quartic_constants() {
    const double r = std::cbrt(0.25);
    const double s3 = std::sqrt(3.0);
    QuarticConstants k{};
    k.r = r;
    k.alpha1 = 3.0 * s3 * r / (2.0 - 3.0 * r);
    k.alpha2 = -s3 * ((3.0 * r + 2.0) * (3.0 * r + 2.0) + 4.0) / (2.0 * (3.0 * r - 2.0) * (3.0 * r - 2.0));
    k.y1 = 3.0 * s3 / (2.0 * r * (2.0 - 3.0 * r));
    k.y2 = -3.0 * s3 * (12.0 * r * r + 8.0 * r + 3.0) / (8.0 * r * r * (3.0 * r - 2.0) * (3.0 * r - 2.0));
    k.C = 3.0 / (4.0 * r * (2.0 - 3.0 * r));
    return k;
}

/// p_a = (z - a)(z + 1)(z - zeta(a))(z - conj zeta(a)),
/// zeta(a) = exp(i(pi/3 + alpha1 a + alpha2 a^2)).
inline DeformationFamily quartic_family() {
    const auto k = quartic_constants();
    DeformationFamily f;
    f.kind = FamilyKind::quartic;
    f.eval = [k](double a) {
        const Complex zeta = std::polar(1.0, std::numbers::pi / 3.0 + k.alpha1 * a + k.alpha2 * a * a);
        return MonicPoly::from_roots({Complex{a, 0.0}, Complex{-1.0, 0.0}, zeta, std::conj(zeta)});
    };
    f.tracked_zero = [](double a) { return Complex{a, 0.0}; };
    f.baseline = f.eval(0.0);
    f.predicted_c0 = k.r;
    f.predicted_c2 = k.C;
    return f;
}

/// Zeros omega_1(a), omega_2(a), conj omega_2(a) of the comparison cubic Q_a / 4.
inline std::vector<Complex> quartic_comparison_crit(double a) {
    const auto k = quartic_constants();
    const double rho = k.r + k.C * a * a;
    const Complex w1{a - rho, 0.0};
    const Complex w2 = a + rho * std::polar(1.0, std::numbers::pi / 3.0 + k.y1 * a + k.y2 * a * a);
    return {w1, w2, std::conj(w2)};
}

// ---------------------------------------------------------------------------
// Quintic deformation of z^5 + z.

struct QuinticConstants {
    double s;       // |z^5 + z|_0 = 5^{-1/4}
    double beta;
    double gamma;
    double delta;
    double K;
};

inline QuinticConstants quintic_constants() {
    const double s = std::pow(0.2, 0.25);
    const double s2 = s * s;
    const double s2r = std::sqrt(2.0);
    QuinticConstants k{};
    k.s = s;
    k.beta = 2.0 * s2r * s2 / (1.0 - 2.0 * s2);
    k.gamma = 4.0 * s2r / (5.0 * s * (1.0 - 2.0 * s2));
    k.delta = (60.0 * s2 * s2 - 19.0) / (50.0 * s2 * (2.0 * s2 - 1.0) * (2.0 * s2 - 1.0));
    k.K = 2.0 / (5.0 * s * (1.0 - 2.0 * s2));
    return k;
}

/// chi_1(a), chi_2(a) and their conjugates: the zeros of s_a / 5.
inline std::vector<Complex> quintic_comparison_crit(double a) {
    const auto k = quintic_constants();
    const double rho = k.s + k.K * a * a;
    const double pi = std::numbers::pi;
    const Complex c1 = a + rho * std::polar(1.0, pi / 4.0 + k.gamma * a + k.delta * a * a);
    const Complex c2 = a + rho * std::polar(1.0, 3.0 * pi / 4.0 + k.gamma * a - k.delta * a * a);
    return {c1, c2, std::conj(c1), std::conj(c2)};
}

struct QuinticFamilies {
    DeformationFamily q;           // q_a in S_5
    DeformationFamily comparison;  // s_a / 5, compared against q_a' / 5
};

/// q_a = (z - a)(z - eta)(z - i eta)(z - conj eta)(z + i conj eta),
/// eta(a) = exp(i(pi/4 + beta a)).
inline QuinticFamilies quintic_family() {
    const auto k = quintic_constants();
    QuinticFamilies out;
    out.q.kind = FamilyKind::quintic;
    out.q.eval = [k](double a) {
        const Complex eta = std::polar(1.0, std::numbers::pi / 4.0 + k.beta * a);
        const Complex i{0.0, 1.0};
        return MonicPoly::from_roots({Complex{a, 0.0}, eta, i * eta, std::conj(eta), -i * std::conj(eta)});
    };
    out.q.tracked_zero = [](double a) { return Complex{a, 0.0}; };
    out.q.baseline = out.q.eval(0.0);
    out.q.predicted_c0 = k.s;
    out.q.predicted_c2 = k.K;

    out.comparison.kind = FamilyKind::custom;
    out.comparison.eval = [](double a) { return MonicPoly::from_roots(quintic_comparison_crit(a)); };
    out.comparison.tracked_zero = [](double a) { return quintic_comparison_crit(a)[0]; };
    out.comparison.baseline = out.comparison.eval(0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Growth fit.

struct FitSample {
    double a = 0.0;
    double d = 0.0;
};

struct FitResult {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double rms_residual = 0.0;
    std::vector<FitSample> grid;
};

/// n points logarithmically spaced on [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int n) {
    if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_grid: need n >= 2 and 0 < lo < hi");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

inline std::vector<double> default_fit_grid() { return log_grid(1e-3, 1e-2, 12); }

/// d(p_a) at one parameter value; the maximizing zero must be the tracked one.
inline double tracked_d(const DeformationFamily& f, double a) {
    const MonicPoly p = f.eval(a);
    const auto zs = roots(p);
    const auto ws = critical_points(p);
    const auto dv = sendov_d(zs, ws);
    const Complex z1 = f.tracked_zero(a);
    if (std::abs(dv.argmax_zero - z1) > 1e-6 && crit_dist(ws, z1) < dv.value * (1.0 - 1e-12))
        throw TrackingError("fit_growth: d is not attained at the tracked zero");
    return dv.value;
}

/// Least squares fit of d(p_a) ~ c0 + c1 a + c2 a^2 with weights 1/a^2.
inline FitResult fit_growth(const DeformationFamily& f, std::span<const double> grid, unsigned jobs = 1) {
    if (grid.size() < 6) throw std::invalid_argument("fit_growth: need at least 6 grid points");
    for (double a : grid)
        if (!(a > 0.0 && a <= 0.05)) throw std::invalid_argument("fit_growth: grid must lie in (0, 0.05]");
    const auto ds = parallel_map(grid.size(), jobs, [&](std::size_t i) { return tracked_d(f, grid[i]); });

    const auto k = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd A(k, 3);
    Eigen::VectorXd b(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double a = grid[static_cast<std::size_t>(i)], w = 1.0 / a;
        A(i, 0) = w;
        A(i, 1) = 1.0;
        A(i, 2) = a;
        b(i) = w * ds[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector3d scale = A.colwise().norm().transpose();
    for (int j = 0; j < 3; ++j) A.col(j) /= scale(j);
    const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(b).cwiseQuotient(scale);

    FitResult out;
    out.c0 = sol(0);
    out.c1 = sol(1);
    out.c2 = sol(2);
    double ss = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = grid[i];
        const double e = ds[i] - (out.c0 + out.c1 * a + out.c2 * a * a);
        ss += e * e;
        out.grid.push_back({a, ds[i]});
    }
    out.rms_residual = std::sqrt(ss / static_cast<double>(grid.size()));
    return out;
}

/// Least squares slope of log(value) against log(a).
inline double log_log_slope(std::span<const double> as, std::span<const double> values) {
    if (as.size() != values.size() || as.size() < 2) throw std::invalid_argument("log_log_slope: bad sizes");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(as.size());
    for (std::size_t i = 0; i < as.size(); ++i) {
        const double x = std::log(as[i]), y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Bottleneck distance between the critical points of p_a and the zeros of Q_a.
inline double quartic_crit_mismatch(double a) {
    const auto ws = critical_points(quartic_family().eval(a));
    return bottleneck_match(ws, quartic_comparison_crit(a)).value;
}

/// Delta(q_a' / 5, s_a / 5).
inline double quintic_crit_mismatch(double a) {
    const auto ws = critical_points(quintic_family().q.eval(a));
    return bottleneck_match(ws, quintic_comparison_crit(a)).value;
}

// ---------------------------------------------------------------------------
// Jet re-derivation of the quartic deformation coefficients.

struct QuarticUnknowns {
    double x1 = 0, x2 = 0, x3 = 0, y1 = 0, y2 = 0, y3 = 0;
};

/// d_{mn}: coefficient of a^n in (m+1) b~_{m+1} - c~_m, for 0 <= m, n <= 2,
/// where b_j are the coefficients of P_a and c_k those of Q_a.
struct QuarticResiduals {
    std::array<std::array<double, 3>, 3> d{};  // d[m][n]
    double max_imag = 0.0;                     // both sides are real polynomials

    double max_abs() const {
        double r = 0.0;
        for (const auto& row : d)
            for (double v : row) r = std::max(r, std::abs(v));
        return r;
    }
};

namespace detail {

// Coefficients (ascending) of prod (z - r_i) with jet-valued r_i.
inline std::vector<ComplexJet> expand_jet_roots(std::span<const ComplexJet> rs) {
    std::vector<ComplexJet> c{ComplexJet(Complex{1.0})};
    for (const auto& r : rs) {
        c.push_back(ComplexJet{});
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -(r * c[0]);
    }
    return c;
}

}  // namespace detail

inline QuarticResiduals quartic_residuals(const QuarticUnknowns& u) {
    const double r = quartic_constants().r;
    const double third = std::numbers::pi / 3.0;
    const RealJet a = RealJet::variable();
    const auto cj = [](const RealJet& x) { return x.cast<Complex>(); };

    const ComplexJet z1 = cj(RealJet(-1.0, 0.0, u.x3));
    const ComplexJet z2 = cis(RealJet(third, u.x1, u.x2));
    const std::array<ComplexJet, 4> p_roots{cj(a), z1, z2, conj(z2)};
    const auto b = detail::expand_jet_roots(p_roots);

    const RealJet rad(r, 0.0, u.y3);
    const ComplexJet w1 = cj(a - rad);
    const ComplexJet w2 = cj(a) + cj(rad) * cis(RealJet(third, u.y1, u.y2));
    const std::array<ComplexJet, 3> q_roots{w1, w2, conj(w2)};
    auto c = detail::expand_jet_roots(q_roots);
    for (auto& v : c) v = ComplexJet(Complex{4.0}) * v;

    QuarticResiduals out;
    for (int m = 0; m <= 2; ++m) {
        const auto mi = static_cast<std::size_t>(m);
        const ComplexJet diff = ComplexJet(Complex(m + 1.0)) * b[mi + 1] - c[mi];
        const std::array<Complex, 3> coeffs{diff.c0, diff.c1, diff.c2};
        for (std::size_t n = 0; n < 3; ++n) {
            out.d[mi][n] = coeffs[n].real();
            out.max_imag = std::max(out.max_imag, std::abs(coeffs[n].imag()));
        }
    }
    return out;
}

struct QuarticDerivation {
    QuarticUnknowns solution;
    QuarticResiduals residuals;
};

/// With x3 = 0 the order-a equations are affine in (x1, y1) and, once those
/// are fixed, the order-a^2 equations are affine in (x2, y2, y3). Each block
/// is assembled exactly by evaluating the residual jets at basis points.
inline QuarticDerivation derive_quartic_coefficients() {
    auto order = [](const QuarticUnknowns& u, std::size_t n) {
        const auto res = quartic_residuals(u);
        return Eigen::Vector3d(res.d[0][n], res.d[1][n], res.d[2][n]);
    };
    auto solve_block = [](const Eigen::MatrixXd& J, const Eigen::Vector3d& rhs) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) < 1e-10 * sv(0))
            throw std::runtime_error("derive_quartic_coefficients: singular linear system");
        return Eigen::VectorXd(svd.solve(rhs));
    };

    // Each block is affine, so one solve is exact in exact arithmetic; two
    // refinement passes remove the rounding left by the large x2, y2 scales.
    QuarticUnknowns u;  // all zero, x3 = 0 throughout
    auto jacobian = [&](std::size_t n, auto&& members) {
        const Eigen::Vector3d base = order(u, n);
        Eigen::MatrixXd J(3, static_cast<Eigen::Index>(members.size()));
        for (std::size_t k = 0; k < members.size(); ++k) {
            QuarticUnknowns e = u;
            e.*members[k] += 1.0;
            J.col(static_cast<Eigen::Index>(k)) = order(e, n) - base;
        }
        return J;
    };
    auto block = [&](std::size_t n, auto members) {
        const Eigen::MatrixXd J = jacobian(n, members);
        for (int pass = 0; pass < 3; ++pass) {
            const Eigen::VectorXd step = solve_block(J, -order(u, n));
            for (std::size_t k = 0; k < members.size(); ++k) u.*members[k] += step(static_cast<Eigen::Index>(k));
        }
    };
    using Member = double QuarticUnknowns::*;
    block(1, std::array<Member, 2>{&QuarticUnknowns::x1, &QuarticUnknowns::y1});
    block(2, std::array<Member, 3>{&QuarticUnknowns::x2, &QuarticUnknowns::y2, &QuarticUnknowns::y3});
    return {u, quartic_residuals(u)};
}

// ---------------------------------------------------------------------------
// Newton–Raphson localization.

struct NewtonBound {
    double bound = 0.0;
    double nearest_root_dist = 0.0;
};

/// deg * |R(w) / R'(w)| bounds the distance from w to the nearest zero of R.
inline NewtonBound newton_localize(const Poly& R, Complex w) {
    if (R.degree() < 1) throw std::invalid_argument("newton_localize: degree must be >= 1");
    const auto [v, dv] = R.eval_with_derivative(w);
    if (dv == Complex{}) throw std::domain_error("newton_localize: R'(w) = 0");
    NewtonBound out;
    out.bound = R.degree() * std::abs(v / dv);
    const auto zs = roots(R);
    out.nearest_root_dist = crit_dist(zs, w);
    return out;
}

// ---------------------------------------------------------------------------
// Zero perturbations p_e.

struct Perturbed {
    MonicPoly poly;
    std::vector<Complex> zeros;  // z_i + e_i, same labels as the base
    std::vector<Complex> crit;   // labels continued from the base critical points
};

namespace detail {

// Nearest-neighbour relabelling; empty on ambiguity.
inline std::vector<Complex> relabel(std::span<const Complex> prev, std::span<const Complex> next) {
    std::vector<Complex> out(prev.size());
    std::vector<bool> used(next.size(), false);
    for (std::size_t j = 0; j < prev.size(); ++j) {
        double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
        std::size_t best = 0;
        for (std::size_t k = 0; k < next.size(); ++k) {
            const double d = std::abs(prev[j] - next[k]);
            if (d < d1) {
                d2 = d1;
                d1 = d;
                best = k;
            } else if (d < d2) {
                d2 = d;
            }
        }
        if (used[best] || !(d1 < 0.5 * d2)) return {};
        used[best] = true;
        out[j] = next[best];
    }
    return out;
}

}  // namespace detail

/// p_e with zeros z_i + e_i. Critical points keep the base labels by
/// continuation along t e, t in [0, 1], halving the step on ambiguity.
inline Perturbed perturb(const Geometry& base, std::span<const Complex> e, double simple_root_tol = 1e-6) {
    const std::size_t n = base.zeros.size();
    if (e.size() != n) throw std::invalid_argument("perturb: size mismatch");
    detail::require_simple(base, simple_root_tol);
    double norm = 0.0;
    for (const auto& v : e) norm = std::max(norm, std::abs(v));
    if (!(norm < 0.5 * min_pairwise_gap(base.zeros)))
        throw std::invalid_argument("perturb: ||e|| must stay below half the minimum zero gap");

    auto zeros_at = [&](double t) {
        std::vector<Complex> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = base.zeros[i] + t * e[i];
        return z;
    };
    std::vector<Complex> crit = base.crit;
    double t = 0.0, h = 1.0;
    while (t < 1.0) {
        const double t1 = std::min(1.0, t + h);
        const auto next = critical_points(MonicPoly::from_roots(zeros_at(t1)));
        auto lab = detail::relabel(crit, next);
        if (lab.empty()) {
            h *= 0.5;
            if (h < 1.0 / 4096.0) throw TrackingError("perturb: critical-point labels are ambiguous");
            continue;
        }
        crit = std::move(lab);
        t = t1;
    }
    auto z = zeros_at(1.0);
    Perturbed out{MonicPoly::from_roots(z), z, std::move(crit)};
    return out;
}

// ---------------------------------------------------------------------------
// Experiments around z^n - z.

/// Zeros of z^n - z labelled 0, then e^{2 pi i k/(n-1)}.
inline std::vector<Complex> znz_zeros(int n) {
    std::vector<Complex> z{Complex{}};
    for (int j = 0; j < n - 1; ++j) z.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / (n - 1)));
    return z;
}

/// d(p) - cos(pi/(n-1)) |eps1| - min_w |eps1 - w| over the critical points w of
/// p_e, p = z^n - z, with the other displacements drawn uniformly from the disk
/// of radius |eps1|^{1+kappa}.
inline double directional_decrease_check(int n, Complex eps1, double kappa, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("directional_decrease_check: n must be >= 4");
    if (std::abs(eps1) > 1e-3) throw std::invalid_argument("directional_decrease_check: |eps1| must be <= 1e-3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double cap = std::pow(std::abs(eps1), 1.0 + kappa);
    auto z = znz_zeros(n);
    z[0] += eps1;
    for (std::size_t j = 1; j < z.size(); ++j)
        z[j] += std::polar(cap * std::sqrt(unif(rng)), 2.0 * std::numbers::pi * unif(rng));
    const auto ws = critical_points(MonicPoly::from_roots(z));
    const double d0 = std::pow(1.0 / n, 1.0 / (n - 1));
    return d0 - std::cos(std::numbers::pi / (n - 1)) * std::abs(eps1) - crit_dist(ws, z[0]);
}

struct PushScan {
    double max_value = 0.0;  // max over the grid of |r_zeta|_zeta
    double argmax_phi = 0.0;
    double gap = 0.0;        // (1/n)^{1/(n-1)} - max_value
};

/// Scans |r_zeta|_zeta for r_zeta = (z - zeta)(z^{n-1} - 1), zeta = e^{i phi},
/// phi on a uniform grid over [0, 2 pi/(n-1)].
inline PushScan boundary_push_scan(int n, int grid_size, unsigned jobs = 1) {
    if (n < 3 || grid_size < 2) throw std::invalid_argument("boundary_push_scan: need n >= 3, grid >= 2");
    const double span = 2.0 * std::numbers::pi / (n - 1);
    const auto vals = parallel_map(static_cast<std::size_t>(grid_size), jobs, [&](std::size_t k) {
        const double phi = span * static_cast<double>(k) / (grid_size - 1);
        const Complex zeta = std::polar(1.0, phi);
        std::vector<Complex> zs{zeta};
        for (int j = 0; j < n - 1; ++j) zs.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / (n - 1)));
        return crit_dist(MonicPoly::from_roots(std::move(zs)), zeta);
    });
    PushScan out;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (vals[k] > out.max_value) {
            out.max_value = vals[k];
            out.argmax_phi = span * static_cast<double>(k) / (grid_size - 1);
        }
    }
    out.gap = std::pow(1.0 / n, 1.0 / (n - 1)) - out.max_value;
    return out;
}

/// sin(pi/(2(n-1))) / sin(pi/n) and (1/n)^{1/(n-1)}; the first is below the
/// second for n >= 5.
inline std::pair<double, double> push_inequality(int n) {
    const double pi = std::numbers::pi;
    return {std::sin(pi / (2.0 * (n - 1))) / std::sin(pi / n), std::pow(1.0 / n, 1.0 / (n - 1))};
}

/// (z - i t)(z^2 - 1).
inline MonicPoly cubic_witness(double t) {
    return MonicPoly::from_roots({Complex{0.0, t}, Complex{1.0, 0.0}, Complex{-1.0, 0.0}});
}

}  // namespace sendov
