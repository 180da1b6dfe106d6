#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "barylab/hiprec.hpp"

namespace barylab {

/// Sorted interpolation nodes on a reference interval [lo, hi].
///
/// nodes_hi holds the extended-precision values and nodes_wk their
/// working-precision roundings. Nodes may lie outside [lo, hi].
struct NodeFamily {
    int n = 0;
    std::vector<HiPrec> nodes_hi;
    std::vector<double> nodes_wk;
    double lo = -1.0;
    double hi = 1.0;

    [[nodiscard]] std::size_t size() const { return nodes_wk.size(); }
};

/// Indices k- (first node strictly above lo) and k+ (last node strictly below hi).
/// endpoint_indices() throws unless k- <= k+, i.e. unless some node lies
/// strictly inside (lo, hi).
struct EndpointIndices {
    int k_lo = 0;
    int k_hi = 0;
};

enum class WeightProvenance { salzer, numerical, reference_lambda, custom };
enum class Precision { working, extended };

std::string_view to_string(WeightProvenance p);

/// Barycentric weights together with how they were produced.
///
/// Working-precision weights have lo == 0 in every entry. diff_scale is the
/// factor applied to every node difference when forming lambda products; the
/// weights therefore equal diff_scale^-n times the textbook lambda weights.
struct WeightSet {
    std::vector<HiPrec> weights;
    WeightProvenance provenance = WeightProvenance::custom;
    Precision precision = Precision::working;
    double diff_scale = 1.0;

    [[nodiscard]] std::size_t size() const { return weights.size(); }
    [[nodiscard]] std::vector<double> working() const;
};

/// Throws std::invalid_argument when the family violates its invariants.
void validate_family(const NodeFamily& family);

[[nodiscard]] EndpointIndices endpoint_indices(const NodeFamily& family);

/// Checks that node k lies strictly inside the interval of one family exactly
/// when it does for the other, and that endpoint/node coincidences match.
/// Throws std::invalid_argument naming the first failing index.
void check_endpoint_correspondence(const NodeFamily& reference, const NodeFamily& perturbed);

/// Chebyshev points of the second kind, -cos(k pi / n), on [-1, 1].
[[nodiscard]] NodeFamily chebyshev_nodes(int n);

/// Family from working-precision nodes; nodes_hi mirrors them exactly.
[[nodiscard]] NodeFamily custom_nodes(std::vector<double> nodes, double lo, double hi);

/// Family from extended-precision nodes; nodes_wk are their roundings.
[[nodiscard]] NodeFamily custom_nodes(std::vector<HiPrec> nodes, double lo, double hi);

/// The family whose exact nodes are the rounded nodes of `family`.
[[nodiscard]] NodeFamily rounded(const NodeFamily& family);

/// Lambda weights prod_{j != k} 1 / (diff_scale * (x_k - x_j)).
///
/// Extended precision works on nodes_hi in double-double; working precision
/// works on nodes_wk in plain double, in index order, with one reciprocal at
/// the end. Partial products are renormalized by exact powers of two, so no
/// intermediate overflow or underflow occurs.
[[nodiscard]] WeightSet lambda_weights(const NodeFamily& family, Precision precision,
                                       double diff_scale = 2.0);

/// Salzer's closed-form weights (-1)^k d_k with d_0 = d_n = 1/2, else 1.
[[nodiscard]] WeightSet salzer_weights(int n);

[[nodiscard]] WeightSet custom_weights(std::vector<double> weights);

/// Displace every node by a reproducible relative amount in [-magnitude, magnitude].
///
/// The displaced nodes are working-precision numbers. An endpoint that
/// coincides with a node follows that node; other endpoints are displaced
/// independently. Throws std::invalid_argument if ordering or endpoint
/// membership would change.
[[nodiscard]] NodeFamily perturb_nodes(const NodeFamily& family, double magnitude, std::uint64_t seed);

}  // namespace barylab
