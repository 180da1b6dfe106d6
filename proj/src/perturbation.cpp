#include "barylab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace barylab {
namespace {

// Slack for double-double rounding in distortion comparisons.
constexpr double kRelativeSlack = 1e-24;
constexpr double kAbsoluteSlack = 1e-26;

double gap_ratio_minus_one(const HiPrec& a, const HiPrec& b, const HiPrec& ah, const HiPrec& bh) {
    return hp_sub(hp_div(hp_sub(a, b), hp_sub(ah, bh)), HiPrec(1.0)).to_double();
}

// Number of nodes strictly below e, or -1 when e coincides with a node.
int insertion_position(const std::vector<HiPrec>& nodes, double e) {
    const HiPrec he(e);
    int below = 0;
    for (const auto& x : nodes) {
        if (x == he) return -1;
        if (x < he) ++below;
    }
    return below;
}

}  // namespace

HiPrec salzer_normalization(int n, double diff_scale) {
    HiPrec factor(2.0 * n);
    const HiPrec half_scale = hp_div(HiPrec(diff_scale), HiPrec(2.0));
    for (int i = 0; i < n; ++i) factor = hp_mul(factor, half_scale);
    return n % 2 == 0 ? factor : -factor;
}

std::vector<double> compute_zeta(const WeightSet& reference, const WeightSet& used, bool rescale) {
    if (reference.size() != used.size() || used.size() == 0) {
        throw std::invalid_argument("compute_zeta: weight sets differ in length");
    }
    const int n = static_cast<int>(used.size()) - 1;
    const HiPrec factor = rescale ? salzer_normalization(n, reference.diff_scale) : HiPrec(1.0);
    std::vector<double> zeta(used.size());
    for (std::size_t k = 0; k < used.size(); ++k) {
        const HiPrec& wh = used.weights[k];
        if (wh.hi == 0.0) throw std::invalid_argument("compute_zeta: zero used weight at index " + std::to_string(k));
        const HiPrec w = rescale ? hp_mul(reference.weights[k], factor) : reference.weights[k];
        zeta[k] = hp_div(hp_sub(w, wh), wh).to_double();
    }
    return zeta;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void attach_zeta(PerturbationReport& report, std::vector<double> zeta) {
    report.zeta_inf = max_abs(zeta);
    report.zeta = std::move(zeta);
}

PerturbationReport compute_delta(const NodeFamily& reference, const NodeFamily& perturbed, bool keep_pairs) {
    validate_family(reference);
    validate_family(perturbed);
    check_endpoint_correspondence(reference, perturbed);
    const int n = reference.n;
    const auto& x = reference.nodes_hi;
    const auto& xh = perturbed.nodes_hi;
    PerturbationReport r;
    r.n = n;
    if (keep_pairs) r.delta_pairs.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    r.delta_lo.assign(n + 1, 0.0);
    r.delta_hi.assign(n + 1, 0.0);
    double worst = 0.0;
    for (int j = 0; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            const double d = gap_ratio_minus_one(x[j], x[k], xh[j], xh[k]);
            worst = std::max(worst, std::abs(d));
            if (keep_pairs) {
                r.delta_pairs[j * (n + 1) + k] = d;
                r.delta_pairs[k * (n + 1) + j] = d;
            }
        }
        if (xh[j] != HiPrec(perturbed.lo)) {
            r.delta_lo[j] = gap_ratio_minus_one(HiPrec(reference.lo), x[j], HiPrec(perturbed.lo), xh[j]);
        }
        if (xh[j] != HiPrec(perturbed.hi)) {
            r.delta_hi[j] = gap_ratio_minus_one(HiPrec(reference.hi), x[j], HiPrec(perturbed.hi), xh[j]);
        }
        worst = std::max({worst, std::abs(r.delta_lo[j]), std::abs(r.delta_hi[j])});
    }
    r.delta = worst;
    return r;
}

ChiMap ChiMap::from_knots(std::vector<HiPrec> source, std::vector<HiPrec> target) {
    if (source.size() != target.size() || source.size() < 2) {
        throw std::invalid_argument("chi map needs two knot vectors of equal length >= 2");
    }
    ChiMap m;
    for (std::size_t i = 0; i + 1 < source.size(); ++i) {
        if (!(source[i] < source[i + 1]) || !(target[i] < target[i + 1])) {
            throw std::invalid_argument("chi map knots must be strictly increasing (index " + std::to_string(i) + ")");
        }
        m.slope_.push_back(hp_div(hp_sub(target[i + 1], target[i]), hp_sub(source[i + 1], source[i])));
    }
    for (std::size_t i = 0; i < source.size(); ++i) m.labels_.push_back({KnotLabel::Kind::node, static_cast<int>(i)});
    m.ref_nodes_ = target;
    m.pert_nodes_ = source;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    return m;
}

std::size_t ChiMap::segment(const HiPrec& xh) const {
    if (xh < source_.front() || xh > source_.back()) throw std::out_of_range("point outside the chi map domain");
    const auto it = std::lower_bound(source_.begin(), source_.end(), xh);
    const auto idx = static_cast<std::size_t>(it - source_.begin());
    return idx == 0 ? 0 : idx - 1;
}

HiPrec ChiMap::operator()(const HiPrec& xh) const {
    const std::size_t i = segment(xh);
    if (xh == source_[i]) return target_[i];
    if (xh == source_[i + 1]) return target_[i + 1];
    return hp_add(target_[i], hp_mul(hp_sub(xh, source_[i]), slope_[i]));
}

ChiMap build_chi(const NodeFamily& perturbed, const NodeFamily& reference) {
    const PerturbationReport report = compute_delta(reference, perturbed, false);
    if (!(report.delta < 1.0)) {
        throw std::invalid_argument("build_chi requires delta < 1 (delta = " + std::to_string(report.delta) + ")");
    }
    const int lo_ref = insertion_position(reference.nodes_hi, reference.lo);
    const int lo_pert = insertion_position(perturbed.nodes_hi, perturbed.lo);
    const int hi_ref = insertion_position(reference.nodes_hi, reference.hi);
    const int hi_pert = insertion_position(perturbed.nodes_hi, perturbed.hi);
    if (lo_ref != lo_pert || hi_ref != hi_pert) {
        throw std::invalid_argument("endpoints fall in different node gaps of the two families");
    }

    std::vector<HiPrec> source, target;
    std::vector<KnotLabel> labels;
    auto push_endpoint = [&](int pos, int k, double src, double tgt, KnotLabel::Kind kind) {
        if (pos == k) {
            source.emplace_back(src);
            target.emplace_back(tgt);
            labels.push_back({kind, -1});
        }
    };
    for (int k = 0; k <= reference.n + 1; ++k) {
        push_endpoint(lo_ref, k, perturbed.lo, reference.lo, KnotLabel::Kind::lower_endpoint);
        push_endpoint(hi_ref, k, perturbed.hi, reference.hi, KnotLabel::Kind::upper_endpoint);
        if (k <= reference.n) {
            source.push_back(perturbed.nodes_hi[k]);
            target.push_back(reference.nodes_hi[k]);
            labels.push_back({KnotLabel::Kind::node, k});
        }
    }
    ChiMap m = ChiMap::from_knots(std::move(source), std::move(target));
    m.labels_ = std::move(labels);
    m.ref_nodes_ = reference.nodes_hi;
    m.pert_nodes_ = perturbed.nodes_hi;
    return m;
}

ChiDistortion chi_distortion(const ChiMap& map, const PerturbationReport& reference_delta, const HiPrec& xh) {
    if (!reference_delta.has_pairs()) throw std::invalid_argument("chi_distortion needs the full delta matrix");
    const auto& xs = map.reference_nodes();
    const auto& xhs = map.perturbed_nodes();
    if (static_cast<int>(xs.size()) != reference_delta.n + 1) {
        throw std::invalid_argument("report and map have different degrees");
    }
    const std::size_t seg = map.segment(xh);
    const auto& knots = map.source_knots();
    if (xh == knots[seg] || xh == knots[seg + 1]) throw std::invalid_argument("chi_distortion: point is a knot");

    auto delta_to = [&](std::size_t j, const KnotLabel& label) {
        switch (label.kind) {
            case KnotLabel::Kind::lower_endpoint: return reference_delta.delta_lo[j];
            case KnotLabel::Kind::upper_endpoint: return reference_delta.delta_hi[j];
            case KnotLabel::Kind::node: return reference_delta.pair(j, static_cast<std::size_t>(label.index));
        }
        return 0.0;
    };

    ChiDistortion out;
    out.segment = seg;
    const HiPrec chi = map(xh);
    const auto& a = map.labels()[seg];
    const auto& b = map.labels()[seg + 1];
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (xh == xhs[j]) throw std::invalid_argument("chi_distortion: point is a perturbed node");
        const double h = std::abs(hp_sub(hp_div(hp_sub(chi, xs[j]), hp_sub(xh, xhs[j])), HiPrec(1.0)).to_double());
        const double bound = std::max(std::abs(delta_to(j, a)), std::abs(delta_to(j, b)));
        out.distortion = std::max(out.distortion, h);
        out.case_bound = std::max(out.case_bound, bound);
        if (h > bound * (1 + kRelativeSlack) + kAbsoluteSlack) out.within = false;
    }
    return out;
}

}  // namespace barylab
