#include "barylab/hiprec.hpp"

#include <array>
#include <cstdlib>

namespace barylab {
namespace {

constexpr int kTerms = 16;

struct TaylorCoefficients {
    std::array<HiPrec, kTerms> cos_coeff;  // (-1)^i / (2i)!
    std::array<HiPrec, kTerms> sin_coeff;  // (-1)^i / (2i+1)!
};

TaylorCoefficients make_coefficients() {
    TaylorCoefficients c;
    HiPrec inv_fact = 1.0;  // 1 / m!
    for (int m = 0; m < 2 * kTerms; ++m) {
        if (m > 0) inv_fact = hp_div(inv_fact, HiPrec(static_cast<double>(m)));
        const int i = m / 2;
        const HiPrec signed_term = (i % 2 == 0) ? inv_fact : -inv_fact;
        if (m % 2 == 0) {
            c.cos_coeff[i] = signed_term;
        } else {
            c.sin_coeff[i] = signed_term;
        }
    }
    return c;
}

const TaylorCoefficients& coefficients() {
    static const TaylorCoefficients c = make_coefficients();
    return c;
}

HiPrec angle(long long a, long long b) {
    return hp_mul(hp_div(HiPrec(static_cast<double>(a)), HiPrec(static_cast<double>(b))), kPi);
}

// Both series assume 0 <= theta <= pi/4.
HiPrec cos_series(const HiPrec& theta) {
    const auto& c = coefficients().cos_coeff;
    const HiPrec t = hp_mul(theta, theta);
    HiPrec acc = c[kTerms - 1];
    for (int i = kTerms - 2; i >= 0; --i) acc = hp_add(hp_mul(acc, t), c[i]);
    return acc;
}

HiPrec sin_series(const HiPrec& theta) {
    const auto& c = coefficients().sin_coeff;
    const HiPrec t = hp_mul(theta, theta);
    HiPrec acc = c[kTerms - 1];
    for (int i = kTerms - 2; i >= 0; --i) acc = hp_add(hp_mul(acc, t), c[i]);
    return hp_mul(acc, theta);
}

}  // namespace

HiPrec cos_pi_ratio(long long num, long long den) {
    if (den <= 0) throw std::invalid_argument("cos_pi_ratio: denominator must be positive");
    long long r = std::llabs(num) % (2 * den);
    if (r > den) r = 2 * den - r;
    bool negate = false;
    if (2 * r > den) {
        r = den - r;
        negate = true;
    }
    HiPrec value;
    if (4 * r <= den) {
        value = cos_series(angle(r, den));
    } else {
        value = sin_series(angle(den - 2 * r, 2 * den));
    }
    return negate ? -value : value;
}

HiPrec sin_pi_ratio(long long num, long long den) {
    if (den <= 0) throw std::invalid_argument("sin_pi_ratio: denominator must be positive");
    // sin(x) = cos(pi/2 - x)
    return cos_pi_ratio(den - 2 * num, 2 * den);
}

}  // namespace barylab
