#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "hypersurf/errors.hpp"

namespace hypersurf {

// Truncated second-order Taylor value  a + b e1 + c e2 + d e1 e2  with
// e1^2 = e2^2 = 0.  Seeding b and c with unit perturbations in directions
// i and j makes d carry the exact mixed partial d^2f/dx_i dx_j after an
// ordinary arithmetic pass, with no truncation error.
struct HyperDual {
    double a = 0.0;  // value
    double b = 0.0;  // first-order coefficient of e1
    double c = 0.0;  // first-order coefficient of e2
    double d = 0.0;  // mixed coefficient of e1 e2

    constexpr HyperDual() = default;
    constexpr HyperDual(double value) : a(value) {}
    constexpr HyperDual(double a, double b, double c, double d)
        : a(a), b(b), c(c), d(d) {}

    constexpr bool is_constant() const { return b == 0.0 && c == 0.0 && d == 0.0; }

    constexpr HyperDual operator-() const { return {-a, -b, -c, -d}; }

    constexpr HyperDual operator+(const HyperDual& o) const {
        return {a + o.a, b + o.b, c + o.c, d + o.d};
    }
    constexpr HyperDual operator-(const HyperDual& o) const {
        return {a - o.a, b - o.b, c - o.c, d - o.d};
    }
    constexpr HyperDual operator*(const HyperDual& o) const {
        return {a * o.a,
                a * o.b + b * o.a,
                a * o.c + c * o.a,
                a * o.d + b * o.c + c * o.b + d * o.a};
    }
    HyperDual operator/(const HyperDual& o) const;

    constexpr bool operator==(const HyperDual&) const = default;
};

// Univariate chain rule: given F(a), F'(a), F''(a) of an outer function,
// compose it with an inner hyper-dual value x.
constexpr HyperDual compose(const HyperDual& x, double f0, double f1, double f2) {
    return {f0, f1 * x.b, f1 * x.c, f2 * x.b * x.c + f1 * x.d};
}

inline HyperDual HyperDual::operator/(const HyperDual& o) const {
    if (o.a == 0.0) throw DomainError("division by zero");
    double inv = 1.0 / o.a;
    return *this * compose(o, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline double real_part(double x) { return x; }
inline double real_part(const HyperDual& x) { return x.a; }

inline bool is_seed_free(double) { return true; }
inline bool is_seed_free(const HyperDual& x) { return x.is_constant(); }

inline HyperDual sqrt(const HyperDual& x) {
    if (x.a < 0.0) throw DomainError("sqrt of negative argument");
    double s = std::sqrt(x.a);
    if (x.a == 0.0 && !x.is_constant())
        throw DomainError("sqrt derivative is unbounded at 0");
    if (x.is_constant()) return {s, 0, 0, 0};
    return compose(x, s, 0.5 / s, -0.25 / (s * x.a));
}

inline HyperDual exp(const HyperDual& x) {
    double e = std::exp(x.a);
    return compose(x, e, e, e);
}

inline HyperDual log(const HyperDual& x) {
    if (x.a <= 0.0) throw DomainError("log of non-positive argument");
    double inv = 1.0 / x.a;
    return compose(x, std::log(x.a), inv, -inv * inv);
}

// abs is smooth away from 0; with live perturbation seeds at 0 there is no
// C^2 extension, so evaluation there is an error rather than a subgradient.
inline HyperDual abs(const HyperDual& x) {
    if (x.a == 0.0) {
        if (!x.is_constant())
            throw DomainError("abs is not differentiable at 0");
        return {0, 0, 0, 0};
    }
    double s = x.a > 0.0 ? 1.0 : -1.0;
    return compose(x, std::fabs(x.a), s, 0.0);
}

namespace detail {

// Exponentiation by squaring; valid for any base, integer exponent.
template <typename S>
S powi(S base, long long n) {
    if (n == 0) return S(1.0);
    bool negative = n < 0;
    unsigned long long m = negative ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                                    : static_cast<unsigned long long>(n);
    S result(1.0);
    S acc = base;
    while (m > 0) {
        if (m & 1ULL) result = result * acc;
        acc = acc * acc;
        m >>= 1;
    }
    if (negative) return S(1.0) / result;
    return result;
}

inline bool is_integer_value(double x, long long& out) {
    if (!std::isfinite(x) || std::fabs(x) > 1e15) return false;
    double r = std::nearbyint(x);
    if (r != x) return false;
    out = static_cast<long long>(r);
    return true;
}

}  // namespace detail

// a^b.  Integer exponents are evaluated by repeated multiplication and
// allow any base; fractional exponents require a > 0.  An exponent that
// carries live perturbation seeds is treated as non-constant and also
// requires a > 0.
template <typename S>
S pow_checked(const S& base, const S& exponent) {
    long long n;
    if (is_seed_free(exponent) && detail::is_integer_value(real_part(exponent), n)) {
        if (real_part(base) == 0.0 && n < 0)
            throw DomainError("0 raised to a negative power");
        return detail::powi(base, n);
    }
    if (real_part(base) <= 0.0)
        throw DomainError("fractional power requires a positive base");
    using std::exp;
    using std::log;
    return exp(exponent * log(base));
}

}  // namespace hypersurf
