#include "barylab/barycentric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace barylab {
namespace {

void check_lengths(std::size_t nodes, std::size_t weights, std::size_t y) {
    if (nodes != weights || nodes != y || nodes == 0) {
        throw std::invalid_argument("nodes, weights and values must have equal nonzero length");
    }
}

std::optional<std::size_t> find_node(std::span<const double> nodes, double x) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (x == nodes[k]) return k;
    }
    return std::nullopt;
}

}  // namespace

EvalResult eval_second_form(std::span<const double> nodes, std::span<const double> weights,
                            std::span<const double> y, double x) {
    check_lengths(nodes.size(), weights.size(), y.size());
    if (auto hit = find_node(nodes, x)) return {y[*hit], hit, 0.0};
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double t = weights[k] / (x - nodes[k]);
        num += t * y[k];
        den += t;
    }
    if (den == 0.0) throw PoleError("second barycentric formula: zero denominator", x);
    return {num / den, std::nullopt, den};
}

EvalResult eval_second_form(std::span<const double> nodes, const WeightSet& weights, std::span<const double> y,
                            double x) {
    const auto w = weights.working();
    return eval_second_form(nodes, w, y, x);
}

double denominator_sum(std::span<const double> nodes, std::span<const double> weights, double x) {
    double den = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) den += weights[k] / (x - nodes[k]);
    return den;
}

EvalResult eval_lagrange_basis(std::span<const double> nodes, std::span<const double> weights, std::size_t k,
                               double x) {
    if (nodes.size() != weights.size() || nodes.empty()) {
        throw std::invalid_argument("nodes and weights must have equal nonzero length");
    }
    if (k >= nodes.size()) throw std::invalid_argument("basis index out of range");
    if (auto hit = find_node(nodes, x)) return {*hit == k ? 1.0 : 0.0, hit, 0.0};
    const double den = denominator_sum(nodes, weights, x);
    if (den == 0.0) throw PoleError("lagrange basis: zero denominator", x);
    const double num = weights[k] / (x - nodes[k]);
    return {num / den, std::nullopt, den};
}

EvalResult eval_lagrange_basis(std::span<const double> nodes, const WeightSet& weights, std::size_t k, double x) {
    const auto w = weights.working();
    return eval_lagrange_basis(nodes, w, k, x);
}

std::vector<double> gap_samples(double a, double b, int per_gap) {
    std::vector<double> pts;
    const double width = b - a;
    pts.push_back(a + width * 0x1p-20);
    pts.push_back(a + width * 0x1p-40);
    for (int i = 1; i < per_gap; ++i) {
        const double s = std::sin(i * std::numbers::pi / (2.0 * per_gap));
        pts.push_back(a + width * (s * s));
    }
    pts.push_back(b - width * 0x1p-40);
    pts.push_back(b - width * 0x1p-20);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::erase_if(pts, [&](double p) { return !(p > a && p < b); });
    return pts;
}

std::vector<double> interval_breakpoints(std::span<const double> nodes, double lo, double hi) {
    std::vector<double> bp{lo};
    for (double x : nodes) {
        if (x > lo && x < hi) bp.push_back(x);
    }
    if (hi > lo) bp.push_back(hi);
    return bp;
}

PoleScan denominator_scan(std::span<const double> nodes, std::span<const double> weights, double lo, double hi,
                          int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("denominator_scan requires grid_size >= 2");
    if (nodes.size() != weights.size()) throw std::invalid_argument("nodes and weights differ in length");
    PoleScan scan;
    auto is_node = [&](double p) { return find_node(nodes, p).has_value(); };
    if (!(hi > lo)) {
        scan.samples = 1;
        if (!is_node(lo) && denominator_sum(nodes, weights, lo) == 0.0) {
            scan.pole_free = false;
            scan.bracket_lo = scan.bracket_hi = lo;
        }
        return scan;
    }
    const auto bp = interval_breakpoints(nodes, lo, hi);
    const std::size_t gaps = bp.size() - 1;
    const int per_gap = std::max(2, static_cast<int>(grid_size / static_cast<int>(gaps)));
    for (std::size_t g = 0; g < gaps; ++g) {
        auto pts = gap_samples(bp[g], bp[g + 1], per_gap);
        if (g == 0 && !is_node(lo)) pts.insert(pts.begin(), lo);
        if (g + 1 == gaps && !is_node(hi)) pts.push_back(hi);
        double prev_x = 0.0;
        double prev_d = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double d = denominator_sum(nodes, weights, pts[i]);
            ++scan.samples;
            if (d == 0.0 || (i > 0 && std::signbit(d) != std::signbit(prev_d))) {
                scan.pole_free = false;
                scan.bracket_lo = d == 0.0 ? pts[i] : prev_x;
                scan.bracket_hi = pts[i];
                return scan;
            }
            prev_x = pts[i];
            prev_d = d;
        }
    }
    return scan;
}

PoleScan denominator_scan(std::span<const double> nodes, const WeightSet& weights, double lo, double hi,
                          int grid_size) {
    const auto w = weights.working();
    return denominator_scan(nodes, w, lo, hi, grid_size);
}

}  // namespace barylab
