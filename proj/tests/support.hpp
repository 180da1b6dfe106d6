#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "barylab/hiprec.hpp"

namespace barylab::testing {

/// Random double with a uniformly distributed binary exponent in [lo_exp, hi_exp].
inline double random_double(std::mt19937_64& rng, int lo_exp = -20, int hi_exp = 20) {
    std::uniform_real_distribution<double> mant(0.5, 1.0);
    std::uniform_int_distribution<int> expo(lo_exp, hi_exp);
    std::bernoulli_distribution sign(0.5);
    const double m = std::ldexp(mant(rng), expo(rng));
    return sign(rng) ? -m : m;
}

/// Random normalized double-double.
inline HiPrec random_hiprec(std::mt19937_64& rng, int lo_exp = -20, int hi_exp = 20) {
    const double hi = random_double(rng, lo_exp, hi_exp);
    std::uniform_real_distribution<double> frac(-0.5, 0.5);
    const double lo = std::ldexp(hi * frac(rng), -52);
    return eft::fast_two_sum(hi, lo);
}

/// n + 1 sorted distinct doubles in [-1, 1].
inline std::vector<double> random_sorted_nodes(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x;
    while (static_cast<int>(x.size()) < n + 1) {
        x.push_back(u(rng));
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
    }
    return x;
}

}  // namespace barylab::testing
