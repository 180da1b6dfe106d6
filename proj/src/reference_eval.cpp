#include "barylab/reference_eval.hpp"

#include <stdexcept>

#include "barylab/errors.hpp"

namespace barylab {
namespace {

void check_lengths(std::size_t nodes, std::size_t weights, std::size_t y) {
    if (nodes != weights || nodes != y || nodes == 0) {
        throw std::invalid_argument("nodes, weights and values must have equal nonzero length");
    }
}

}  // namespace

HiPrec eval_second_form_hp(std::span<const HiPrec> nodes, std::span<const HiPrec> weights,
                           std::span<const HiPrec> y, const HiPrec& x) {
    check_lengths(nodes.size(), weights.size(), y.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (x == nodes[k]) return y[k];
    }
    HiPrec num;
    HiPrec den;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const HiPrec t = hp_div(weights[k], hp_sub(x, nodes[k]));
        num = hp_add(num, hp_mul(t, y[k]));
        den = hp_add(den, t);
    }
    if (den.hi == 0.0) throw PoleError("double-double barycentric formula: zero denominator", x.hi);
    return hp_div(num, den);
}

HiPrec eval_lagrange_basis_hp(std::span<const HiPrec> nodes, std::span<const HiPrec> weights, std::size_t k,
                              const HiPrec& x) {
    if (nodes.size() != weights.size() || k >= nodes.size()) {
        throw std::invalid_argument("lagrange basis: bad lengths or index");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (x == nodes[i]) return i == k ? HiPrec(1.0) : HiPrec(0.0);
    }
    HiPrec den;
    for (std::size_t i = 0; i < nodes.size(); ++i) den = hp_add(den, hp_div(weights[i], hp_sub(x, nodes[i])));
    if (den.hi == 0.0) throw PoleError("double-double lagrange basis: zero denominator", x.hi);
    return hp_div(hp_div(weights[k], hp_sub(x, nodes[k])), den);
}

ExactRational eval_second_form_exact(std::span<const ExactRational> nodes, std::span<const ExactRational> weights,
                                     std::span<const ExactRational> y, const ExactRational& x) {
    check_lengths(nodes.size(), weights.size(), y.size());
    if (nodes.size() > kExactMaxDegree + 1) throw std::invalid_argument("exact evaluation limited to n <= 64");
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (x == nodes[k]) return y[k];
    }
    ExactRational num = 0;
    ExactRational den = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        ExactRational t = weights[k] / (x - nodes[k]);
        num += t * y[k];
        den += t;
    }
    if (den == 0) throw PoleError("exact barycentric formula: zero denominator", x.get_d());
    return num / den;
}

}  // namespace barylab
