#pragma once

// Complex polynomial core: dense ascending-coefficient polynomials, the monic
// zero/coefficient dual representation, and a simultaneous root finder.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sendov/errors.hpp"

namespace sendov {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace detail {

inline void require_finite(std::span<const Complex> values, const char* what) {
    for (const auto& v : values) {
        if (!is_finite(v)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
}

// Coefficients of prod (z - r_i), ascending, leading 1.
inline std::vector<Complex> expand_roots(std::span<const Complex> roots) {
    std::vector<Complex> c{Complex{1.0, 0.0}};
    c.reserve(roots.size() + 1);
    for (const auto& r : roots) {
        c.push_back(Complex{0.0, 0.0});
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return c;
}

}  // namespace detail

/// Dense complex polynomial sum_k c_k z^k with ascending coefficients.
class Poly {
public:
    Poly() : c_{Complex{}} {}

    explicit Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(Complex{});
        detail::require_finite(c_, "Poly");
        trim();
    }

    static Poly from_roots(std::span<const Complex> roots, Complex scale = 1.0) {
        detail::require_finite(roots, "Poly::from_roots");
        auto c = detail::expand_roots(roots);
        for (auto& v : c) v *= scale;
        return Poly(std::move(c));
    }

    /// Degree of the highest nonzero coefficient; the zero polynomial reports 0.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    bool is_zero() const noexcept { return c_.size() == 1 && c_[0] == Complex{}; }

    Complex operator[](int k) const noexcept {
        return (k < 0 || k > degree()) ? Complex{} : c_[static_cast<std::size_t>(k)];
    }

    std::span<const Complex> coeffs() const noexcept { return c_; }

    Complex leading() const noexcept { return c_.back(); }

    Complex operator()(Complex z) const noexcept {
        Complex acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// Value and first derivative in one Horner pass.
    std::pair<Complex, Complex> eval_with_derivative(Complex z) const noexcept {
        Complex p{}, dp{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            dp = dp * z + p;
            p = p * z + *it;
        }
        return {p, dp};
    }

    /// sum |c_k| |z|^k, the rounding-error scale of evaluating at z.
    double abs_eval(double r) const noexcept {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
        return acc;
    }

    Poly derivative() const {
        if (degree() == 0) return Poly{};
        std::vector<Complex> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        return Poly(std::move(d));
    }

    /// Primitive with zero constant term.
    Poly antiderivative() const {
        std::vector<Complex> a(c_.size() + 1);
        for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
        return Poly(std::move(a));
    }

    /// k-th derivative evaluated at z.
    Complex derivative_at(int k, Complex z) const {
        Poly q = *this;
        for (int i = 0; i < k; ++i) q = q.derivative();
        return q(z);
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Complex> c(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
        for (int k = 0; k < static_cast<int>(c.size()); ++k) c[static_cast<std::size_t>(k)] = a[k] + b[k];
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0) * b; }

    friend Poly operator*(Complex s, const Poly& p) {
        std::vector<Complex> c(p.c_);
        for (auto& v : c) v *= s;
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        std::vector<Complex> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }

private:
    void trim() {
        while (c_.size() > 1 && c_.back() == Complex{}) c_.pop_back();
    }

    std::vector<Complex> c_;
};

/// Monic polynomial z^n + a_{n-1} z^{n-1} + ... + a_0, optionally carrying the
/// zero multiset it was built from.
class MonicPoly {
public:
    static MonicPoly from_roots(std::vector<Complex> roots) {
        if (roots.empty()) throw std::invalid_argument("MonicPoly::from_roots: empty root list");
        detail::require_finite(roots, "MonicPoly::from_roots");
        auto c = detail::expand_roots(roots);
        c.pop_back();
        MonicPoly p(std::move(c));
        p.roots_ = std::move(roots);
        return p;
    }

    /// Lower coefficients a_0..a_{n-1}; the leading 1 is implied.
    static MonicPoly from_coeffs(std::vector<Complex> lower) {
        if (lower.empty()) throw std::invalid_argument("MonicPoly::from_coeffs: degree must be >= 1");
        detail::require_finite(lower, "MonicPoly::from_coeffs");
        return MonicPoly(std::move(lower));
    }

    /// Normalizes a general polynomial of degree >= 1 by its leading coefficient.
    static MonicPoly from_poly(const Poly& q) {
        if (q.degree() < 1) throw std::invalid_argument("MonicPoly::from_poly: degree must be >= 1");
        std::vector<Complex> c(q.coeffs().begin(), q.coeffs().end() - 1);
        for (auto& v : c) v /= q.leading();
        return MonicPoly(std::move(c));
    }

    int degree() const noexcept { return static_cast<int>(a_.size()); }

    std::span<const Complex> coeffs() const noexcept { return a_; }

    Complex coeff(int k) const noexcept {
        if (k == degree()) return 1.0;
        return (k < 0 || k > degree()) ? Complex{} : a_[static_cast<std::size_t>(k)];
    }

    double max_coeff_modulus() const noexcept {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    Poly as_poly() const {
        std::vector<Complex> c(a_);
        c.push_back(1.0);
        return Poly(std::move(c));
    }

    Complex operator()(Complex z) const noexcept {
        Complex acc{1.0, 0.0};
        for (auto it = a_.rbegin(); it != a_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    const std::optional<std::vector<Complex>>& cached_roots() const noexcept { return roots_; }

    /// Rotation conjugate e^{-i n phi} p(e^{i phi} z); stays monic.
    MonicPoly rotated(double phi) const {
        const int n = degree();
        std::vector<Complex> c(a_.size());
        for (int k = 0; k < n; ++k)
            c[static_cast<std::size_t>(k)] = a_[static_cast<std::size_t>(k)] * std::polar(1.0, (k - n) * phi);
        return MonicPoly(std::move(c));
    }

private:
    explicit MonicPoly(std::vector<Complex> lower) : a_(std::move(lower)) {}

    std::vector<Complex> a_;
    std::optional<std::vector<Complex>> roots_;
};

/// p' with leading coefficient n.
inline Poly derivative(const MonicPoly& p) { return p.as_poly().derivative(); }

struct RootOptions {
    double tol = 1e-13;         // stop when |correction| < tol * (1 + |z|)
    int max_iters = 200;
    int polish_steps = 3;
    double cluster_radius = 1e-7;  // relative; members are reported at the cluster mean
};

namespace detail {

// Cluster members are replaced by the cluster mean, refined as a simple zero
// of q^{(k-1)} for a cluster of size k. The members of a perturbed multiple
// root are ill conditioned; that zero is not.
inline void settle_clusters(std::vector<Complex>& z, double radius, const Poly* q = nullptr, int steps = 0) {
    const std::size_t n = z.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    bool any = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(z[i] - z[j]) <= radius * (1.0 + std::abs(z[i]))) {
                parent[find(i)] = find(j);
                any = true;
            }
    if (!any) return;
    std::vector<Complex> sum(n);
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        sum[find(i)] += z[i];
        ++count[find(i)];
    }
    for (std::size_t r = 0; r < n; ++r) {
        if (count[r] < 2) continue;
        sum[r] /= static_cast<double>(count[r]);
        if (q == nullptr) continue;
        Poly dk = *q;
        for (int k = 1; k < count[r]; ++k) dk = dk.derivative();
        const double span = radius * (1.0 + std::abs(sum[r]));
        Complex c = sum[r];
        for (int s = 0; s < steps; ++s) {
            const auto [v, dv] = dk.eval_with_derivative(c);
            if (v == Complex{} || dv == Complex{}) break;
            const Complex cand = c - v / dv;
            if (std::abs(cand - sum[r]) > span || std::abs(dk(cand)) >= std::abs(v)) break;
            c = cand;
        }
        sum[r] = c;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = find(i);
        if (count[r] > 1) z[i] = sum[r];
    }
}

}  // namespace detail

/// Zeros of q by Aberth–Ehrlich simultaneous iteration followed by a guarded
/// Newton polish. Exact zeros at the origin are deflated first. Deterministic.
inline std::vector<Complex> roots(const Poly& q, const RootOptions& opt = {}) {
    if (q.degree() < 1) throw std::invalid_argument("roots: degree must be >= 1");

    // Exact zeros at the origin.
    std::size_t shift = 0;
    while (q[static_cast<int>(shift)] == Complex{}) ++shift;
    std::vector<Complex> out(shift, Complex{});
    std::vector<Complex> c(q.coeffs().begin() + static_cast<std::ptrdiff_t>(shift), q.coeffs().end());
    const Complex lead = c.back();
    for (auto& v : c) v /= lead;
    const Poly m(std::move(c));
    const int n = m.degree();
    if (n == 0) return out;
    if (n == 1) {
        out.push_back(-m[0]);
        return out;
    }

    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(m[k]));
    radius += 1.0;

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    std::size_t remaining = static_cast<std::size_t>(n);
    for (int iter = 0; iter < opt.max_iters && remaining > 0; ++iter) {
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (done[k]) continue;
            const auto [pz, dpz] = m.eval_with_derivative(z[k]);
            if (std::abs(pz) <= 4.0 * n * eps * m.abs_eval(std::abs(z[k]))) {
                done[k] = true;
                --remaining;
                continue;
            }
            if (dpz == Complex{}) {
                z[k] += radius * 1e-8 * Complex{1.0, 1.0};
                continue;
            }
            const Complex newton = pz / dpz;
            Complex s{};
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j == k) continue;
                const Complex diff = z[k] - z[j];
                if (diff != Complex{}) s += 1.0 / diff;
            }
            const Complex w = newton / (1.0 - newton * s);
            z[k] -= w;
            if (std::abs(w) < opt.tol * (1.0 + std::abs(z[k]))) {
                done[k] = true;
                --remaining;
            }
        }
    }
    if (remaining > 0) throw ConvergenceError("roots: Aberth iteration did not converge");

    // Polish isolated roots only; Newton on a cluster member wanders.
    for (std::size_t k = 0; k < z.size(); ++k) {
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < z.size(); ++j)
            if (j != k) gap = std::min(gap, std::abs(z[k] - z[j]));
        if (gap <= 1e-6 * (1.0 + std::abs(z[k]))) continue;
        for (int s = 0; s < opt.polish_steps; ++s) {
            const auto [pz, dpz] = m.eval_with_derivative(z[k]);
            if (pz == Complex{} || dpz == Complex{}) break;
            const Complex cand = z[k] - pz / dpz;
            if (std::abs(m(cand)) > std::abs(pz)) break;
            z[k] = cand;
        }
    }
    detail::settle_clusters(z, opt.cluster_radius, &m, opt.polish_steps + 2);
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

/// Zeros of a monic polynomial; the cached zero multiset when present.
inline std::vector<Complex> roots(const MonicPoly& p, const RootOptions& opt = {}) {
    if (p.cached_roots()) return *p.cached_roots();
    return roots(p.as_poly(), opt);
}

inline std::vector<Complex> critical_points(const MonicPoly& p, const RootOptions& opt = {}) {
    if (p.degree() < 2) throw std::invalid_argument("critical_points: degree must be >= 2");
    return roots(derivative(p), opt);
}

/// Exact value of the integral of q from a to z via the closed-form primitive.
inline Complex antiderivative_eval(const Poly& q, Complex a, Complex z) {
    const Poly prim = q.antiderivative();
    return prim(z) - prim(a);
}

/// Smallest distance between two entries; +inf for fewer than two.
inline double min_pairwise_gap(std::span<const Complex> pts) noexcept {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) g = std::min(g, std::abs(pts[i] - pts[j]));
    return g;
}

}  // namespace sendov
