#pragma once

#include <cstddef>
#include <span>

#include "barylab/exact.hpp"
#include "barylab/hiprec.hpp"

namespace barylab {

/// Second barycentric formula in double-double, same summation order as the
/// working-precision evaluator. Returns y_k exactly when x is a node; throws
/// PoleError on a zero denominator.
[[nodiscard]] HiPrec eval_second_form_hp(std::span<const HiPrec> nodes, std::span<const HiPrec> weights,
                                         std::span<const HiPrec> y, const HiPrec& x);

/// k-th Lagrange basis function in double-double.
[[nodiscard]] HiPrec eval_lagrange_basis_hp(std::span<const HiPrec> nodes, std::span<const HiPrec> weights,
                                            std::size_t k, const HiPrec& x);

/// Largest degree accepted by the exact evaluator.
inline constexpr std::size_t kExactMaxDegree = 64;

/// Exact rational value of the second barycentric formula.
[[nodiscard]] ExactRational eval_second_form_exact(std::span<const ExactRational> nodes,
                                                   std::span<const ExactRational> weights,
                                                   std::span<const ExactRational> y, const ExactRational& x);

}  // namespace barylab
