#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "barylab/nodes_weights.hpp"

namespace barylab {

/// Lower estimate of the Lebesgue constant on [lo, hi].
struct LebesgueEstimate {
    double value = 0.0;
    double argmax = 0.0;
    std::size_t samples = 0;
};

/// Samples the Lebesgue function sum_k |w_k / (x - x_k)| / |sum_k w_k / (x - x_k)|
/// on gap_samples() in every gap between consecutive breakpoints.
///
/// `grid` is the total sample budget; each gap receives the largest power of
/// two not exceeding max(2, grid / gaps), so doubling grid only adds points
/// and the estimate never decreases. Throws std::invalid_argument for grid < 2
/// and PoleError when the denominator changes sign inside a gap.
[[nodiscard]] LebesgueEstimate lebesgue_constant(std::span<const double> nodes, const WeightSet& weights, double lo,
                                                 double hi, int grid, int threads = 1);

/// Lebesgue function at a single point that is not a node.
[[nodiscard]] double lebesgue_function(std::span<const double> nodes, std::span<const double> weights, double x);

/// Cited Lebesgue bound for Chebyshev points of the second kind.
[[nodiscard]] double chebyshev_lebesgue_bound(int n);
inline constexpr double kChebyshevLebesgueCap = 10.841;

struct BoundValues {
    double nu_bound = 0.0;
    double alpha_bound = 0.0;
    double beta_bound = 0.0;
    double x_displacement_bound = 0.0;
};

/// Backward-error bounds for perturbed nodes and weights.
struct BoundReport {
    bool hypothesis_ok = false;
    std::string violated;           // inequality that failed, empty when ok
    std::optional<double> Z;        // absent when (2n+5) eps >= 1
    std::optional<BoundValues> values;
    double lebesgue_used = 0.0;
};

/// Z = (zeta + (n+2) eps) / (1 - (n+2) eps); hypothesis (delta + Z) Lambda + Z < 1;
/// nu = (2n+5) eps / (1 - (2n+5) eps); alpha = (1 + Lambda)(delta + Z) / (1 - Z - (delta + Z) Lambda);
/// beta = nu + (1 + nu) alpha.
[[nodiscard]] BoundReport theorem_main_bounds(int n, double eps, double zeta_inf, double delta, double lebesgue,
                                              double node_error = 0.0,
                                              std::pair<double, double> endpoint_errors = {0.0, 0.0});

/// 3.7 (3 + ln n) eps n^2; requires 10 <= n <= 2e6 and 0 < eps <= 2.3e-16.
[[nodiscard]] double corollary_salzer_bound(int n, double eps);
/// (2.2 ln n + 9.1) eps n; same range.
[[nodiscard]] double corollary_numerical_bound(int n, double eps);

enum class WeightKind { salzer, numerical };
[[nodiscard]] std::string_view to_string(WeightKind k);
[[nodiscard]] WeightKind parse_weight_kind(std::string_view s);

/// Re-runs the corollary proof chain: cited weight error (4.9248 eps n^2 for
/// Salzer weights, 2.0001 eps n for numerical ones), delta = 0 and the cited
/// Lebesgue bound, fed through theorem_main_bounds.
[[nodiscard]] BoundReport replicate_corollary(WeightKind kind, int n, double eps);

[[nodiscard]] double corollary_bound(WeightKind kind, int n, double eps);

struct DeltaBounds {
    double beta_bound = 0.0;
    double lebesgue_perturbed_bound = 0.0;
};

/// Bounds for exact evaluation on perturbed nodes and weights:
/// (d + zeta)(1 + Lambda) / D and (1 + d) Lambda / D with D = 1 - zeta - (d + zeta) Lambda.
/// Throws std::domain_error unless d < (1 - zeta) / Lambda - zeta.
[[nodiscard]] DeltaBounds theorem_delta_bounds(double d, double zeta_inf, double lebesgue);

/// Hypothesis checks of the lower bound on the backward error.
struct CertificateChecks {
    bool zeta_range = false;      // 2.5 (n+3) eps <= |zeta| <= 0.001
    bool k_maximal = false;       // |zeta_k| = |zeta|
    bool opposite_signs = false;  // zeta_k zeta_j <= 0
    bool near_node = false;       // 0 < |(x - x_j) / w_j| S <= 0.01
    bool relative_gap = false;    // sup_{i != j} |(x - x_j) / (x_i - x_j)| < 0.01
    [[nodiscard]] bool all() const { return zeta_range && k_maximal && opposite_signs && near_node && relative_gap; }
    [[nodiscard]] std::string first_failure() const;
};

struct LowerBoundCertificate {
    double S = 0.0;
    std::size_t j = 0;
    std::size_t k = 0;
    double x = 0.0;
    double zeta_inf = 0.0;
    CertificateChecks checks;
    double guaranteed_beta = 0.0;  // 0.16 |zeta|
};

struct CertificateOutcome {
    std::optional<LowerBoundCertificate> certificate;
    CertificateChecks checks;
    [[nodiscard]] std::string failure() const { return checks.first_failure(); }
};

inline constexpr double kLowerBoundFactor = 0.16;

/// Evaluates the five hypotheses at (j, k, x) with zeta computed from
/// reference (w) against used (w-hat) weights; S = sum_{i != j} |w_i| / |x_j - x_i|.
/// `rescale` multiplies the reference weights by salzer_normalization first.
[[nodiscard]] CertificateOutcome lower_bound_certificate(std::span<const double> nodes, const WeightSet& used,
                                                         const WeightSet& reference, std::size_t j, std::size_t k,
                                                         double x, double eps, bool rescale);

/// Same checks with zeta already computed.
[[nodiscard]] CertificateOutcome lower_bound_certificate(std::span<const double> nodes,
                                                         std::span<const HiPrec> reference_weights,
                                                         std::span<const double> zeta, std::size_t j, std::size_t k,
                                                         double x, double eps);

}  // namespace barylab
