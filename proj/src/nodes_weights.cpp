#include "barylab/nodes_weights.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace barylab {
namespace {

constexpr double kRenormHigh = 0x1p500;
constexpr double kRenormLow = 0x1p-500;

bool out_of_band(double m) {
    const double a = std::abs(m);
    return a > kRenormHigh || a < kRenormLow;
}

double lambda_working(std::span<const double> x, std::size_t k, double c) {
    double mant = 1.0;
    int exponent = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == k) continue;
        mant *= c * (x[k] - x[j]);
        if (out_of_band(mant)) {
            int e = 0;
            mant = std::frexp(mant, &e);
            exponent += e;
        }
    }
    return std::ldexp(1.0 / mant, -exponent);
}

HiPrec lambda_extended(std::span<const HiPrec> x, std::size_t k, double c) {
    HiPrec mant = 1.0;
    int exponent = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == k) continue;
        mant = hp_mul(hp_mul(hp_sub(x[k], x[j]), c), mant);
        if (out_of_band(mant.hi)) {
            int e = 0;
            (void)std::frexp(mant.hi, &e);
            mant = ldexp(mant, -e);
            exponent += e;
        }
    }
    return ldexp(hp_div(HiPrec(1.0), mant), -exponent);
}

bool strictly_inside(const HiPrec& x, double lo, double hi) { return x > HiPrec(lo) && x < HiPrec(hi); }

}  // namespace

std::string_view to_string(WeightProvenance p) {
    switch (p) {
        case WeightProvenance::salzer: return "salzer";
        case WeightProvenance::numerical: return "numerical";
        case WeightProvenance::reference_lambda: return "reference_lambda";
        case WeightProvenance::custom: return "custom";
    }
    return "unknown";
}

std::vector<double> WeightSet::working() const {
    std::vector<double> out;
    out.reserve(weights.size());
    for (const auto& w : weights) out.push_back(w.hi);
    return out;
}

void validate_family(const NodeFamily& family) {
    const auto count = static_cast<std::size_t>(family.n) + 1;
    if (family.n < 1) throw std::invalid_argument("node family needs n >= 1");
    if (family.nodes_hi.size() != count || family.nodes_wk.size() != count) {
        throw std::invalid_argument("node family size does not match n + 1");
    }
    for (std::size_t k = 0; k + 1 < count; ++k) {
        if (!(family.nodes_hi[k] < family.nodes_hi[k + 1]) || !(family.nodes_wk[k] < family.nodes_wk[k + 1])) {
            throw std::invalid_argument("nodes not strictly increasing at index " + std::to_string(k));
        }
    }
    if (!(family.lo < family.hi)) throw std::invalid_argument("interval endpoints must satisfy lo < hi");
}

EndpointIndices endpoint_indices(const NodeFamily& family) {
    EndpointIndices idx{-1, -1};
    for (int k = 0; k <= family.n; ++k) {
        if (family.nodes_hi[k] > HiPrec(family.lo)) {
            idx.k_lo = k;
            break;
        }
    }
    for (int k = family.n; k >= 0; --k) {
        if (family.nodes_hi[k] < HiPrec(family.hi)) {
            idx.k_hi = k;
            break;
        }
    }
    if (idx.k_lo < 0 || idx.k_hi < idx.k_lo) throw std::invalid_argument("endpoint indices k- <= k+ do not exist");
    return idx;
}

void check_endpoint_correspondence(const NodeFamily& reference, const NodeFamily& perturbed) {
    if (reference.n != perturbed.n) throw std::invalid_argument("families have different degrees");
    for (int k = 0; k <= reference.n; ++k) {
        const auto& x = reference.nodes_hi[k];
        const auto& xh = perturbed.nodes_hi[k];
        const bool in_ref = strictly_inside(x, reference.lo, reference.hi);
        const bool in_pert = strictly_inside(xh, perturbed.lo, perturbed.hi);
        const bool lo_ref = x == HiPrec(reference.lo);
        const bool lo_pert = xh == HiPrec(perturbed.lo);
        const bool hi_ref = x == HiPrec(reference.hi);
        const bool hi_pert = xh == HiPrec(perturbed.hi);
        if (in_ref != in_pert || lo_ref != lo_pert || hi_ref != hi_pert) {
            throw std::invalid_argument("endpoint correspondence violated at node " + std::to_string(k));
        }
    }
}

NodeFamily chebyshev_nodes(int n) {
    if (n < 1) throw std::invalid_argument("chebyshev_nodes requires n >= 1");
    NodeFamily f;
    f.n = n;
    f.nodes_hi.resize(n + 1);
    for (int k = 0; 2 * k <= n; ++k) {
        const HiPrec c = cos_pi_ratio(k, n);
        f.nodes_hi[k] = -c;
        f.nodes_hi[n - k] = c;
    }
    f.nodes_wk.reserve(n + 1);
    for (const auto& x : f.nodes_hi) f.nodes_wk.push_back(x.hi);
    f.lo = -1.0;
    f.hi = 1.0;
    return f;
}

NodeFamily custom_nodes(std::vector<double> nodes, double lo, double hi) {
    NodeFamily f;
    f.n = static_cast<int>(nodes.size()) - 1;
    f.nodes_hi.assign(nodes.begin(), nodes.end());
    f.nodes_wk = std::move(nodes);
    f.lo = lo;
    f.hi = hi;
    validate_family(f);
    return f;
}

NodeFamily custom_nodes(std::vector<HiPrec> nodes, double lo, double hi) {
    NodeFamily f;
    f.n = static_cast<int>(nodes.size()) - 1;
    f.nodes_wk.reserve(nodes.size());
    for (const auto& x : nodes) f.nodes_wk.push_back(x.hi);
    f.nodes_hi = std::move(nodes);
    f.lo = lo;
    f.hi = hi;
    validate_family(f);
    return f;
}

NodeFamily rounded(const NodeFamily& family) {
    NodeFamily f = family;
    f.nodes_hi.assign(family.nodes_wk.begin(), family.nodes_wk.end());
    return f;
}

WeightSet lambda_weights(const NodeFamily& family, Precision precision, double diff_scale) {
    if (!(diff_scale > 0.0) || !std::isfinite(diff_scale)) {
        throw std::invalid_argument("diff_scale must be positive and finite");
    }
    for (std::size_t k = 0; k + 1 < family.size(); ++k) {
        if (family.nodes_hi[k] == family.nodes_hi[k + 1] ||
            (precision == Precision::working && family.nodes_wk[k] == family.nodes_wk[k + 1])) {
            throw std::invalid_argument("repeated node at index " + std::to_string(k));
        }
    }
    WeightSet w;
    w.precision = precision;
    w.diff_scale = diff_scale;
    w.weights.resize(family.size());
    if (precision == Precision::extended) {
        w.provenance = WeightProvenance::reference_lambda;
        for (std::size_t k = 0; k < family.size(); ++k) w.weights[k] = lambda_extended(family.nodes_hi, k, diff_scale);
    } else {
        w.provenance = WeightProvenance::numerical;
        for (std::size_t k = 0; k < family.size(); ++k) w.weights[k] = lambda_working(family.nodes_wk, k, diff_scale);
    }
    return w;
}

WeightSet salzer_weights(int n) {
    if (n < 1) throw std::invalid_argument("salzer_weights requires n >= 1");
    WeightSet w;
    w.provenance = WeightProvenance::salzer;
    w.precision = Precision::working;
    w.diff_scale = 1.0;
    w.weights.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double d = (k == 0 || k == n) ? 0.5 : 1.0;
        w.weights[k] = (k % 2 == 0) ? d : -d;
    }
    return w;
}

WeightSet custom_weights(std::vector<double> weights) {
    WeightSet w;
    w.provenance = WeightProvenance::custom;
    w.precision = Precision::working;
    w.diff_scale = 1.0;
    for (double v : weights) {
        if (v == 0.0 || !std::isfinite(v)) throw std::invalid_argument("weights must be finite and nonzero");
        w.weights.emplace_back(v);
    }
    return w;
}

NodeFamily perturb_nodes(const NodeFamily& family, double magnitude, std::uint64_t seed) {
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
        throw std::invalid_argument("perturbation magnitude must be finite and nonnegative");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-magnitude, magnitude);
    std::vector<double> moved(family.size());
    for (std::size_t k = 0; k < family.size(); ++k) {
        const double x = family.nodes_wk[k];
        moved[k] = x + x * dist(rng);
    }
    auto move_endpoint = [&](double e) {
        const double r = dist(rng);
        for (std::size_t k = 0; k < family.size(); ++k) {
            if (family.nodes_hi[k] == HiPrec(e)) return moved[k];
        }
        return e + e * r;
    };
    const double lo = move_endpoint(family.lo);
    const double hi = move_endpoint(family.hi);
    NodeFamily out = custom_nodes(std::move(moved), lo, hi);
    check_endpoint_correspondence(family, out);
    return out;
}

}  // namespace barylab
