#pragma once

// Degree-2 truncated Maclaurin series c0 + c1 a + c2 a^2 in a real parameter a.

#include <cmath>
#include <complex>

namespace sendov {

template <typename T>
struct Jet {
    T c0{}, c1{}, c2{};

    constexpr Jet() = default;
    constexpr Jet(T v) : c0(v) {}  // NOLINT: constants promote implicitly
    constexpr Jet(T v0, T v1, T v2) : c0(v0), c1(v1), c2(v2) {}

    /// The parameter itself, a.
    static constexpr Jet variable() { return Jet(T{0}, T{1}, T{0}); }

    template <typename U>
    constexpr Jet<U> cast() const {
        return Jet<U>(U(c0), U(c1), U(c2));
    }

    /// Truncated value at a.
    template <typename S>
    constexpr auto operator()(S a) const {
        return c0 + (c1 + c2 * a) * a;
    }

    constexpr Jet& operator+=(const Jet& o) {
        c0 += o.c0;
        c1 += o.c1;
        c2 += o.c2;
        return *this;
    }
    constexpr Jet& operator-=(const Jet& o) {
        c0 -= o.c0;
        c1 -= o.c1;
        c2 -= o.c2;
        return *this;
    }
    constexpr Jet& operator*=(const Jet& o) { return *this = *this * o; }

    friend constexpr Jet operator+(Jet x, const Jet& y) { return x += y; }
    friend constexpr Jet operator-(Jet x, const Jet& y) { return x -= y; }
    friend constexpr Jet operator-(const Jet& x) { return Jet(-x.c0, -x.c1, -x.c2); }

    friend constexpr Jet operator*(const Jet& x, const Jet& y) {
        return Jet(x.c0 * y.c0, x.c0 * y.c1 + x.c1 * y.c0, x.c0 * y.c2 + x.c1 * y.c1 + x.c2 * y.c0);
    }

    /// Requires an invertible constant term.
    friend constexpr Jet operator/(const Jet& x, const Jet& y) {
        const T q0 = x.c0 / y.c0;
        const T q1 = (x.c1 - q0 * y.c1) / y.c0;
        const T q2 = (x.c2 - q0 * y.c2 - q1 * y.c1) / y.c0;
        return Jet(q0, q1, q2);
    }
};

using RealJet = Jet<double>;
using ComplexJet = Jet<std::complex<double>>;

inline ComplexJet conj(const ComplexJet& x) { return {std::conj(x.c0), std::conj(x.c1), std::conj(x.c2)}; }

inline RealJet exp(const RealJet& x) {
    const double e = std::exp(x.c0);
    return {e, e * x.c1, e * (x.c2 + 0.5 * x.c1 * x.c1)};
}

inline RealJet cos(const RealJet& x) {
    const double c = std::cos(x.c0), s = std::sin(x.c0);
    return {c, -s * x.c1, -s * x.c2 - 0.5 * c * x.c1 * x.c1};
}

inline RealJet sin(const RealJet& x) {
    const double c = std::cos(x.c0), s = std::sin(x.c0);
    return {s, c * x.c1, c * x.c2 - 0.5 * s * x.c1 * x.c1};
}

/// exp(i x) = cos x + i sin x for a real jet x.
inline ComplexJet cis(const RealJet& x) {
    const RealJet c = cos(x), s = sin(x);
    return {{c.c0, s.c0}, {c.c1, s.c1}, {c.c2, s.c2}};
}

}  // namespace sendov
