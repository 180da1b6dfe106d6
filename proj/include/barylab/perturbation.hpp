#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "barylab/hiprec.hpp"
#include "barylab/nodes_weights.hpp"

namespace barylab {

/// Node and weight distortion measures between a reference and a perturbed setup.
struct PerturbationReport {
    int n = 0;
    /// delta_jk = (x_j - x_k) / (xh_j - xh_k) - 1, row-major (j, k); empty in summary mode.
    std::vector<double> delta_pairs;
    std::vector<double> delta_lo;  // delta^-_j, endpoint x^-
    std::vector<double> delta_hi;  // delta^+_j, endpoint x^+
    double delta = 0.0;            // max of |delta^-_j|, |delta_jk|, |delta^+_j|
    std::vector<double> zeta;      // (w_k - wh_k) / wh_k
    double zeta_inf = 0.0;

    [[nodiscard]] bool has_pairs() const { return !delta_pairs.empty(); }
    [[nodiscard]] double pair(std::size_t j, std::size_t k) const { return delta_pairs[j * (n + 1) + k]; }
};

/// Common factor that maps diff_scale-scaled lambda weights of Chebyshev
/// points of the second kind onto Salzer's normalization:
/// (-1)^n * 2n * (diff_scale / 2)^n. Equals (-1)^n * 2n for diff_scale = 2.
[[nodiscard]] HiPrec salzer_normalization(int n, double diff_scale);

/// zeta_k = (w_k - wh_k) / wh_k in double-double, rounded to double.
///
/// With rescale set, the reference weights are first multiplied by
/// salzer_normalization(n, reference.diff_scale); the interpolant does not
/// change under a common factor. Throws std::invalid_argument on a zero used
/// weight or a length mismatch.
[[nodiscard]] std::vector<double> compute_zeta(const WeightSet& reference, const WeightSet& used, bool rescale);

[[nodiscard]] double max_abs(const std::vector<double>& v);

/// Stores zeta and its max norm in the report.
void attach_zeta(PerturbationReport& report, std::vector<double> zeta);

/// Relative errors of all node gaps and endpoint gaps, from extended-precision
/// node values. keep_pairs = false skips storing the (n+1)^2 matrix.
/// Throws std::invalid_argument when the endpoint correspondence between the
/// two families fails.
[[nodiscard]] PerturbationReport compute_delta(const NodeFamily& reference, const NodeFamily& perturbed,
                                               bool keep_pairs = true);

/// What a knot of a ChiMap stands for.
struct KnotLabel {
    enum class Kind { node, lower_endpoint, upper_endpoint };
    Kind kind = Kind::node;
    int index = 0;  // node index when kind == node
};

/// Piecewise-linear increasing map from perturbed knots onto reference knots.
class ChiMap {
public:
    /// Plain piecewise-linear interpolation between strictly increasing knot
    /// vectors of equal length (all knots labelled as nodes).
    static ChiMap from_knots(std::vector<HiPrec> source, std::vector<HiPrec> target);

    [[nodiscard]] HiPrec operator()(const HiPrec& xh) const;

    [[nodiscard]] const std::vector<HiPrec>& source_knots() const { return source_; }
    [[nodiscard]] const std::vector<HiPrec>& target_knots() const { return target_; }
    [[nodiscard]] const std::vector<KnotLabel>& labels() const { return labels_; }
    [[nodiscard]] const std::vector<HiPrec>& reference_nodes() const { return ref_nodes_; }
    [[nodiscard]] const std::vector<HiPrec>& perturbed_nodes() const { return pert_nodes_; }
    [[nodiscard]] double domain_lo() const { return source_.front().to_double(); }
    [[nodiscard]] double domain_hi() const { return source_.back().to_double(); }

    /// Index i of the segment (s_i, s_{i+1}] containing xh; throws std::out_of_range outside.
    [[nodiscard]] std::size_t segment(const HiPrec& xh) const;

private:
    friend ChiMap build_chi(const NodeFamily& perturbed, const NodeFamily& reference);

    std::vector<HiPrec> source_;
    std::vector<HiPrec> target_;
    std::vector<HiPrec> slope_;
    std::vector<KnotLabel> labels_;
    std::vector<HiPrec> ref_nodes_;
    std::vector<HiPrec> pert_nodes_;
};

/// Map carrying perturbed nodes and endpoints onto the reference ones.
///
/// Endpoints are inserted as extra knots unless they coincide with a node.
/// Throws std::invalid_argument when delta >= 1 or the endpoint
/// correspondence fails.
[[nodiscard]] ChiMap build_chi(const NodeFamily& perturbed, const NodeFamily& reference);

struct ChiDistortion {
    double distortion = 0.0;  // max_j |(chi(xh) - x_j) / (xh - xh_j) - 1|
    double case_bound = 0.0;  // max_j of the segment bound max(|delta_{j,a}|, |delta_{j,b}|)
    bool within = true;       // every j satisfies its own bound
    std::size_t segment = 0;
};

/// Gap distortion of chi at xh and the segment-endpoint bound from the delta entries.
///
/// Needs a report computed with keep_pairs. xh must lie in the domain and
/// differ from every knot and perturbed node.
[[nodiscard]] ChiDistortion chi_distortion(const ChiMap& map, const PerturbationReport& reference_delta,
                                           const HiPrec& xh);

}  // namespace barylab
