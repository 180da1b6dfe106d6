#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "barylab/hiprec.hpp"

namespace barylab {

/// Exact rational number (reduced, positive denominator), backed by GMP.
using ExactRational = mpq_class;

/// Exact conversion of a finite double.
inline ExactRational to_rational(double x) { return ExactRational(x); }

/// Exact value hi + lo of a double-double.
inline ExactRational to_rational(const HiPrec& x) {
    ExactRational r(x.hi);
    r += ExactRational(x.lo);
    return r;
}

inline std::vector<ExactRational> to_rational(std::span<const double> xs) {
    std::vector<ExactRational> out;
    out.reserve(xs.size());
    for (double x : xs) out.emplace_back(x);
    return out;
}

inline std::vector<ExactRational> to_rational(std::span<const HiPrec> xs) {
    std::vector<ExactRational> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(to_rational(x));
    return out;
}

/// |approx - exact| / |exact| as a double; exact must be nonzero.
inline double relative_error(const ExactRational& approx, const ExactRational& exact) {
    ExactRational diff = approx - exact;
    diff /= exact;
    return std::abs(diff.get_d());
}

inline double relative_error(const HiPrec& approx, const ExactRational& exact) {
    return relative_error(to_rational(approx), exact);
}

}  // namespace barylab
