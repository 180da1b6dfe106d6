#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>

namespace barylab {

/// Double-double number: the value is hi + lo with |lo| <= ulp(hi)/2.
///
/// Unit roundoff is about 2^-106 (1.2e-32); every arithmetic operation
/// below has a relative error bounded by a small multiple of that.
/// Operations are built from error-free transformations and never rely on
/// fused multiply-add, so results are identical on every IEEE-754 target.
struct HiPrec {
    double hi = 0.0;
    double lo = 0.0;

    constexpr HiPrec() = default;
    constexpr HiPrec(double x) : hi(x), lo(0.0) {}  // NOLINT: implicit by design of the numeric tower
    constexpr HiPrec(double h, double l) : hi(h), lo(l) {}

    [[nodiscard]] constexpr double to_double() const { return hi + lo; }
    [[nodiscard]] bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }
};

namespace eft {

/// Exact sum s + e = a + b (Knuth).
inline HiPrec two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

/// Exact sum, valid when |a| >= |b| or a == 0 (Dekker).
inline HiPrec fast_two_sum(double a, double b) {
    const double s = a + b;
    const double e = b - (s - a);
    return {s, e};
}

/// Exact difference a - b.
inline HiPrec two_diff(double a, double b) {
    const double s = a - b;
    const double bb = s - a;
    const double e = (a - (s - bb)) - (b + bb);
    return {s, e};
}

// Veltkamp splitting constant 2^27 + 1.
inline constexpr double kSplitter = 134217729.0;

inline void split(double a, double& high, double& low) {
    const double t = kSplitter * a;
    high = t - (t - a);
    low = a - high;
}

/// Exact product p + e = a * b (Dekker), no fma required.
inline HiPrec two_prod(double a, double b) {
    const double p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    const double e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, e};
}

}  // namespace eft

inline HiPrec operator-(const HiPrec& a) { return {-a.hi, -a.lo}; }

/// Accurate double-double addition (relative error <= 3u^2).
inline HiPrec hp_add(const HiPrec& a, const HiPrec& b) {
    HiPrec s = eft::two_sum(a.hi, b.hi);
    const HiPrec t = eft::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = eft::fast_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return eft::fast_two_sum(s.hi, s.lo);
}

inline HiPrec hp_sub(const HiPrec& a, const HiPrec& b) { return hp_add(a, -b); }

inline HiPrec hp_mul(const HiPrec& a, const HiPrec& b) {
    HiPrec p = eft::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return eft::fast_two_sum(p.hi, p.lo);
}

/// Product of a double-double by a double.
inline HiPrec hp_mul(const HiPrec& a, double b) {
    const HiPrec c = eft::two_prod(a.hi, b);
    const double cl2 = a.lo * b;
    HiPrec t = eft::fast_two_sum(c.hi, cl2);
    t.lo += c.lo;
    return eft::fast_two_sum(t.hi, t.lo);
}

/// Double-double division. Throws std::domain_error on a zero divisor.
inline HiPrec hp_div(const HiPrec& a, const HiPrec& b) {
    if (b.hi == 0.0) {
        throw std::domain_error("HiPrec division by zero");
    }
    const double th = a.hi / b.hi;
    const HiPrec r = hp_mul(b, th);
    const double pi_h = a.hi - r.hi;
    const double delta_l = a.lo - r.lo;
    const double delta = pi_h + delta_l;
    const double tl = delta / b.hi;
    return eft::fast_two_sum(th, tl);
}

inline HiPrec operator+(const HiPrec& a, const HiPrec& b) { return hp_add(a, b); }
inline HiPrec operator-(const HiPrec& a, const HiPrec& b) { return hp_sub(a, b); }
inline HiPrec operator*(const HiPrec& a, const HiPrec& b) { return hp_mul(a, b); }
inline HiPrec operator/(const HiPrec& a, const HiPrec& b) { return hp_div(a, b); }
inline HiPrec& operator+=(HiPrec& a, const HiPrec& b) { return a = hp_add(a, b); }
inline HiPrec& operator-=(HiPrec& a, const HiPrec& b) { return a = hp_sub(a, b); }
inline HiPrec& operator*=(HiPrec& a, const HiPrec& b) { return a = hp_mul(a, b); }
inline HiPrec& operator/=(HiPrec& a, const HiPrec& b) { return a = hp_div(a, b); }

inline bool operator==(const HiPrec& a, const HiPrec& b) { return a.hi == b.hi && a.lo == b.lo; }

inline std::partial_ordering operator<=>(const HiPrec& a, const HiPrec& b) {
    if (auto c = a.hi <=> b.hi; c != 0) return c;
    return a.lo <=> b.lo;
}

inline HiPrec abs(const HiPrec& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

/// Exact scaling by 2^e (barring overflow and subnormals).
inline HiPrec ldexp(const HiPrec& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

/// Square root with one Newton correction in double-double.
inline HiPrec sqrt(const HiPrec& a) {
    if (a.hi <= 0.0) {
        if (a.hi == 0.0) return {};
        throw std::domain_error("HiPrec sqrt of negative value");
    }
    const double s = std::sqrt(a.hi);
    const HiPrec r = hp_sub(a, eft::two_prod(s, s));
    return eft::fast_two_sum(s, r.hi / (2.0 * s));
}

/// pi to double-double accuracy.
inline constexpr HiPrec kPi{3.141592653589793116e+00, 1.224646799147353207e-16};

/// cos(num * pi / den) to double-double accuracy, den > 0.
///
/// The angle is reduced with integer arithmetic, so no cancellation occurs
/// near the zeros of the cosine.
[[nodiscard]] HiPrec cos_pi_ratio(long long num, long long den);

/// sin(num * pi / den) to double-double accuracy, den > 0.
[[nodiscard]] HiPrec sin_pi_ratio(long long num, long long den);

}  // namespace barylab
