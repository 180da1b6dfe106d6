#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "barylab/errors.hpp"
#include "barylab/nodes_weights.hpp"

namespace barylab {

/// Result of one evaluation of the second barycentric formula.
struct EvalResult {
    double value = 0.0;
    std::optional<std::size_t> node_hit;  // set when x equals a node bit-exactly
    double denom = 0.0;                   // computed denominator (0 on a node hit)
};

/// Second barycentric formula in working precision.
///
/// Sums run left to right over k = 0..n with one rounding per difference,
/// quotient, product and addition; this is the object under study, so it
/// is neither compensated nor reordered. Throws PoleError when the computed
/// denominator is exactly zero and std::invalid_argument on length mismatch.
[[nodiscard]] EvalResult eval_second_form(std::span<const double> nodes, std::span<const double> weights,
                                          std::span<const double> y, double x);
[[nodiscard]] EvalResult eval_second_form(std::span<const double> nodes, const WeightSet& weights,
                                          std::span<const double> y, double x);

/// k-th Lagrange basis function in second barycentric form.
///
/// Bit-identical to eval_second_form with y = e_k.
[[nodiscard]] EvalResult eval_lagrange_basis(std::span<const double> nodes, std::span<const double> weights,
                                             std::size_t k, double x);
[[nodiscard]] EvalResult eval_lagrange_basis(std::span<const double> nodes, const WeightSet& weights,
                                             std::size_t k, double x);

/// Working-precision denominator sum_k w_k / (x - x_k), same ordering as above.
[[nodiscard]] double denominator_sum(std::span<const double> nodes, std::span<const double> weights, double x);

/// Outcome of a denominator sign scan.
struct PoleScan {
    bool pole_free = true;
    double bracket_lo = 0.0;  // valid when !pole_free
    double bracket_hi = 0.0;
    std::size_t samples = 0;
};

/// Points strictly inside (a, b), Chebyshev-distributed plus two near-endpoint
/// boosts. Grids for per_gap and 2 * per_gap are nested.
[[nodiscard]] std::vector<double> gap_samples(double a, double b, int per_gap);

/// Scans the sign of the denominator over [lo, hi] on a grid refined near
/// the nodes. A sign change inside a gap between consecutive nodes brackets a
/// pole; sign flips across a node are expected and ignored.
[[nodiscard]] PoleScan denominator_scan(std::span<const double> nodes, std::span<const double> weights,
                                        double lo, double hi, int grid_size);
[[nodiscard]] PoleScan denominator_scan(std::span<const double> nodes, const WeightSet& weights, double lo,
                                        double hi, int grid_size);

/// Breakpoints lo, nodes strictly inside (lo, hi), hi.
[[nodiscard]] std::vector<double> interval_breakpoints(std::span<const double> nodes, double lo, double hi);

}  // namespace barylab
