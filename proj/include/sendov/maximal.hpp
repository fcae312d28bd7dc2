#pragma once

// The 0-maximal families z^{2m} + e^{2i theta} z and
// z^{2m+1} + lambda e^{i theta} z^{m+1} + e^{2i theta} z, their translated and
// scaled versions, a classifier, and the coefficient identities behind them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sendov/errors.hpp"
#include "sendov/metrics.hpp"
#include "sendov/poly.hpp"

namespace sendov {

enum class Parity { even, odd };

struct ZeroMaximalSpec {
    Parity parity = Parity::even;
    int m = 1;
    double theta = 0.0;
    double lambda = 0.0;  // odd case only

    int degree() const noexcept { return parity == Parity::even ? 2 * m : 2 * m + 1; }
};

/// 2 sqrt(2m+1) / (m+1), the admissible range of |lambda| for n = 2m+1.
inline double lambda_bound(int m) {
    if (m < 1) throw std::invalid_argument("lambda_bound: m must be >= 1");
    return 2.0 * std::sqrt(2.0 * m + 1.0) / (m + 1.0);
}

/// (1/n)^{1/(n-1)}, the common modulus of the critical points of a 0-maximal polynomial.
inline double zero_maximal_radius(int n) { return std::pow(1.0 / n, 1.0 / (n - 1)); }

/// theta reduced to [0, pi) with lambda flipped to compensate; (theta, lambda)
/// and (theta + pi, -lambda) name the same polynomial.
inline ZeroMaximalSpec canonical(ZeroMaximalSpec s) {
    double t = std::fmod(s.theta, 2.0 * std::numbers::pi);
    if (t < 0) t += 2.0 * std::numbers::pi;
    if (t >= std::numbers::pi) {
        t -= std::numbers::pi;
        s.lambda = -s.lambda;
    }
    s.theta = t;
    if (s.parity == Parity::even) s.lambda = 0.0;
    return s;
}

namespace detail {

inline void validate(const ZeroMaximalSpec& s) {
    if (s.m < 1) throw std::invalid_argument("ZeroMaximalSpec: m must be >= 1");
    if (!std::isfinite(s.theta) || !std::isfinite(s.lambda))
        throw std::invalid_argument("ZeroMaximalSpec: non-finite parameter");
    if (s.parity == Parity::odd && std::abs(s.lambda) > lambda_bound(s.m) * (1.0 + 1e-12))
        throw std::invalid_argument("ZeroMaximalSpec: |lambda| exceeds 2 sqrt(2m+1)/(m+1)");
}

}  // namespace detail

inline MonicPoly make_zero_maximal(const ZeroMaximalSpec& s) {
    detail::validate(s);
    const int n = s.degree();
    std::vector<Complex> c(static_cast<std::size_t>(n));
    c[1] = std::polar(1.0, 2.0 * s.theta);
    if (s.parity == Parity::odd) c[static_cast<std::size_t>(s.m + 1)] += s.lambda * std::polar(1.0, s.theta);
    return MonicPoly::from_coeffs(std::move(c));
}

/// Extremal polynomial for the zero-spread problem centred at a with critical
/// radius R: every critical point lies at distance R from a and the farthest
/// zero at R n^{1/(n-1)}.
inline MonicPoly make_general_extremal(Complex a, double R, const ZeroMaximalSpec& s) {
    if (!(R > 0.0)) throw std::invalid_argument("make_general_extremal: R must be > 0");
    detail::validate(s);
    const int n = s.degree();
    const int m = s.m;
    // Coefficients in the shifted variable u = z - a.
    std::vector<Complex> u(static_cast<std::size_t>(n + 1));
    u[static_cast<std::size_t>(n)] = 1.0;
    if (s.parity == Parity::even) {
        u[1] = 2.0 * m * std::pow(R, 2 * m - 1) * std::polar(1.0, s.theta);
    } else {
        u[static_cast<std::size_t>(m + 1)] = s.lambda * std::sqrt(2.0 * m + 1.0) * std::pow(R, m) * std::polar(1.0, s.theta);
        u[1] = (2.0 * m + 1.0) * std::pow(R, 2 * m) * std::polar(1.0, 2.0 * s.theta);
    }
    // Expand sum u_k (z - a)^k.
    Poly acc;
    const Poly lin(std::vector<Complex>{-a, 1.0});
    for (int k = n; k >= 0; --k) acc = acc * lin + Poly(std::vector<Complex>{u[static_cast<std::size_t>(k)]});
    return MonicPoly::from_poly(acc);
}

enum class ZeroMaxVerdict { zero_maximal_even, zero_maximal_odd, not_zero_maximal };

inline const char* to_string(ZeroMaxVerdict v) {
    switch (v) {
        case ZeroMaxVerdict::zero_maximal_even: return "zero_maximal_even";
        case ZeroMaxVerdict::zero_maximal_odd: return "zero_maximal_odd";
        case ZeroMaxVerdict::not_zero_maximal: return "not_zero_maximal";
    }
    return "?";
}

struct Classification {
    ZeroMaxVerdict verdict = ZeroMaxVerdict::not_zero_maximal;
    std::optional<ZeroMaximalSpec> recovered;
    std::vector<std::pair<std::string, double>> residuals;

    double max_residual() const {
        double r = 0.0;
        for (const auto& [name, v] : residuals) r = std::max(r, v);
        return r;
    }
};

/// Checks the coefficient pattern, the unit-circle zeros and the common
/// critical modulus of a 0-maximal polynomial, and recovers (theta, lambda).
/// Critical points are read through the root finder's cluster means so that
/// the doubled critical points of the boundary-lambda case pass.
inline Classification classify_zero_maximal(const MonicPoly& p, double tol = 1e-8) {
    const int n = p.degree();
    if (n < 2) throw std::invalid_argument("classify_zero_maximal: degree must be >= 2");
    const bool odd = n % 2 == 1;
    const int m = n / 2;
    Classification out;
    auto add = [&](std::string name, double v) { out.residuals.emplace_back(std::move(name), v); };

    add("a0", std::abs(p.coeff(0)));
    add("abs_a1_minus_1", std::abs(std::abs(p.coeff(1)) - 1.0));
    double stray = 0.0;
    for (int k = 2; k < n; ++k)
        if (!(odd && k == m + 1)) stray = std::max(stray, std::abs(p.coeff(k)));
    add("other_coeffs", stray);

    double theta = 0.5 * std::arg(p.coeff(1));
    if (theta < 0) theta += std::numbers::pi;
    if (theta >= std::numbers::pi) theta -= std::numbers::pi;
    double lambda = 0.0;
    if (odd) {
        const Complex l = p.coeff(m + 1) * std::polar(1.0, -theta);
        lambda = l.real();
        add("lambda_imag", std::abs(l.imag()));
        add("lambda_bound_excess", std::max(0.0, std::abs(lambda) - lambda_bound(m)));
    }

    const auto zs = roots(p);
    std::vector<Complex> nonzero(zs);
    auto origin = std::min_element(nonzero.begin(), nonzero.end(),
                                   [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    nonzero.erase(origin);
    double circle = 0.0;
    for (const auto& z : nonzero) circle = std::max(circle, std::abs(std::abs(z) - 1.0));
    add("zeros_on_unit_circle", circle);

    RootOptions ro;
    ro.cluster_radius = 1e-6;
    const auto ws = roots(derivative(p), ro);
    const double R = zero_maximal_radius(n);
    double crit = 0.0;
    for (const auto& w : ws) crit = std::max(crit, std::abs(std::abs(w) - R));
    add("critical_modulus", crit);

    if (out.max_residual() < tol) {
        out.verdict = odd ? ZeroMaxVerdict::zero_maximal_odd : ZeroMaxVerdict::zero_maximal_even;
        out.recovered = ZeroMaximalSpec{odd ? Parity::odd : Parity::even, m, theta, lambda};
    }
    return out;
}

struct SelfInversiveResult {
    double max_residual = 0.0;
    bool holds = false;
};

/// max_k |a_k conj(a_0) - a_n conj(a_{n-k})|; vanishes when all zeros lie on the unit circle.
inline SelfInversiveResult self_inversive_check(const Poly& q, double tol = 1e-12) {
    const int n = q.degree();
    if (n < 1) throw std::invalid_argument("self_inversive_check: degree must be >= 1");
    double r = 0.0;
    for (int k = 0; k < n; ++k) r = std::max(r, std::abs(q[k] * std::conj(q[0]) - q[n] * std::conj(q[n - k])));
    return {r, r <= tol};
}

/// Relation between derivatives at a zero alpha whose critical points all lie
/// on the circle of radius R about alpha:
///   (n-k-1)! n R^{2k} q^{(k+1)}(alpha) = k! q'(alpha) conj(q^{(n-k)}(alpha)).
/// Returns the largest residual over k = 0..n-1, each divided by max(1, |lhs|, |rhs|).
inline double critical_circle_relation_check(const MonicPoly& q, Complex alpha, double R, double tol) {
    const int n = q.degree();
    if (n < 2) throw std::invalid_argument("critical_circle_relation_check: degree must be >= 2");
    if (std::abs(q(alpha)) > tol * (1.0 + q.max_coeff_modulus()))
        throw PreconditionError("critical_circle_relation_check: alpha is not a zero");
    RootOptions ro;
    ro.cluster_radius = 1e-6;
    const auto ws = roots(derivative(q), ro);
    for (const auto& w : ws)
        if (std::abs(std::abs(w - alpha) - R) > tol * (1.0 + R))
            throw PreconditionError("critical_circle_relation_check: critical point off the circle");

    const Poly poly = q.as_poly();
    std::vector<Complex> der(static_cast<std::size_t>(n + 1));  // der[k] = q^{(k)}(alpha)
    Poly d = poly;
    for (int k = 0; k <= n; ++k) {
        der[static_cast<std::size_t>(k)] = d(alpha);
        d = d.derivative();
    }
    auto fact = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    double worst = 0.0;
    for (int k = 0; k <= n - 1; ++k) {
        const Complex lhs = fact(n - k - 1) * n * std::pow(R, 2 * k) * der[static_cast<std::size_t>(k + 1)];
        const Complex rhs = fact(k) * der[1] * std::conj(der[static_cast<std::size_t>(n - k)]);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

/// Real roots in [1, n-2] of n^{2x/(n-1)} (n - x) - n (x + 1): dense scan with
/// step 1e-3 then bisection to 1e-12.
inline std::vector<double> balance_root(int n) {
    if (n < 3) throw std::invalid_argument("balance_root: n must be >= 3");
    const double nn = n;
    auto f = [&](double x) { return std::pow(nn, 2.0 * x / (nn - 1.0)) * (nn - x) - nn * (x + 1.0); };
    const double lo = 1.0, hi = nn - 2.0;
    std::vector<double> found;
    auto push = [&](double x) {
        if (found.empty() || std::abs(found.back() - x) > 1e-9) found.push_back(x);
    };
    constexpr double step = 1e-3;
    const auto steps = static_cast<long>(std::ceil((hi - lo) / step));
    double x0 = lo, f0 = f(x0);
    if (f0 == 0.0) push(x0);
    for (long k = 1; k <= steps; ++k) {
        const double x1 = std::min(hi, lo + k * step);
        const double f1 = f(x1);
        if (f1 == 0.0) {
            push(x1);
        } else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
            double a = x0, b = x1, fa = f0;
            while (b - a > 1e-12) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            push(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return found;
}

}  // namespace sendov
