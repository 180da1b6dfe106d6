#include "barylab/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "barylab/barycentric.hpp"
#include "barylab/parallel.hpp"
#include "barylab/perturbation.hpp"

namespace barylab {
namespace {

void check_corollary_range(int n, double eps) {
    if (n < 10 || n > 2'000'000) throw std::invalid_argument("corollary bounds need 10 <= n <= 2e6, got " + std::to_string(n));
    if (!(eps > 0.0) || eps > 2.3e-16) throw std::invalid_argument("corollary bounds need 0 < eps <= 2.3e-16");
}

struct GapMax {
    double value = 0.0;
    double argmax = 0.0;
    std::size_t samples = 0;
};

}  // namespace

double lebesgue_function(std::span<const double> nodes, std::span<const double> weights, double x) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double t = weights[k] / (x - nodes[k]);
        num += std::abs(t);
        den += t;
    }
    if (den == 0.0) throw PoleError("zero denominator in the Lebesgue function", x);
    return num / std::abs(den);
}

LebesgueEstimate lebesgue_constant(std::span<const double> nodes, const WeightSet& weights, double lo, double hi,
                                   int grid, int threads) {
    if (grid < 2) throw std::invalid_argument("lebesgue_constant requires grid >= 2");
    if (nodes.size() != weights.size()) throw std::invalid_argument("nodes and weights differ in length");
    if (!(hi > lo)) throw std::invalid_argument("lebesgue_constant requires lo < hi");
    const auto w = weights.working();
    const auto bp = interval_breakpoints(nodes, lo, hi);
    const std::size_t gaps = bp.size() - 1;
    const int budget = std::max(2, static_cast<int>(grid / static_cast<long long>(gaps)));
    const int per_gap = static_cast<int>(std::bit_floor(static_cast<unsigned>(budget)));

    std::vector<GapMax> results(gaps);
    const std::size_t chunks = threads <= 1 ? 1 : static_cast<std::size_t>(threads) * 8;
    parallel_chunks(gaps, threads, chunks, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t g = begin; g < end; ++g) {
            const auto pts = gap_samples(bp[g], bp[g + 1], per_gap);
            GapMax m;
            double prev = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double d = denominator_sum(nodes, w, pts[i]);
                if (d == 0.0 || (i > 0 && std::signbit(d) != std::signbit(prev))) {
                    throw PoleError("denominator changes sign inside a gap", pts[i]);
                }
                prev = d;
                const double v = lebesgue_function(nodes, w, pts[i]);
                if (v > m.value) {
                    m.value = v;
                    m.argmax = pts[i];
                }
            }
            m.samples = pts.size();
            results[g] = m;
        }
    });

    LebesgueEstimate est;
    auto consider = [&](double v, double x) {
        if (v > est.value) {
            est.value = v;
            est.argmax = x;
        }
    };
    for (double e : {lo, hi}) {
        if (std::find(nodes.begin(), nodes.end(), e) == nodes.end()) {
            consider(lebesgue_function(nodes, w, e), e);
            ++est.samples;
        } else {
            consider(1.0, e);
        }
    }
    for (const auto& r : results) {
        consider(r.value, r.argmax);
        est.samples += r.samples;
    }
    return est;
}

double chebyshev_lebesgue_bound(int n) { return 0.67667 * std::log(static_cast<double>(n)) + 1.0236; }

BoundReport theorem_main_bounds(int n, double eps, double zeta_inf, double delta, double lebesgue, double node_error,
                                std::pair<double, double> endpoint_errors) {
    if (n < 1 || eps < 0.0 || zeta_inf < 0.0 || delta < 0.0 || lebesgue < 0.0) {
        throw std::invalid_argument("theorem_main_bounds: negative or invalid input");
    }
    BoundReport r;
    r.lebesgue_used = lebesgue;
    if (!((2.0 * n + 5) * eps < 1.0)) {
        r.violated = "(2n+5) eps < 1";
        return r;
    }
    const double np2 = (n + 2.0) * eps;
    const double Z = (zeta_inf + np2) / (1.0 - np2);
    r.Z = Z;
    const double lhs = (delta + Z) * lebesgue + Z;
    if (!(lhs < 1.0)) {
        r.violated = "(delta + Z) Lambda + Z < 1 (left side " + std::to_string(lhs) + ")";
        return r;
    }
    r.hypothesis_ok = true;
    BoundValues v;
    const double g = (2.0 * n + 5) * eps;
    v.nu_bound = g / (1.0 - g);
    v.alpha_bound = (1.0 + lebesgue) * (delta + Z) / (1.0 - Z - (delta + Z) * lebesgue);
    v.beta_bound = v.nu_bound + (1.0 + v.nu_bound) * v.alpha_bound;
    v.x_displacement_bound = std::max({node_error, std::abs(endpoint_errors.first), std::abs(endpoint_errors.second)});
    r.values = v;
    return r;
}

double corollary_salzer_bound(int n, double eps) {
    check_corollary_range(n, eps);
    const double nn = static_cast<double>(n);
    return 3.7 * (3.0 + std::log(nn)) * eps * nn * nn;
}

double corollary_numerical_bound(int n, double eps) {
    check_corollary_range(n, eps);
    const double nn = static_cast<double>(n);
    return (2.2 * std::log(nn) + 9.1) * eps * nn;
}

std::string_view to_string(WeightKind k) { return k == WeightKind::salzer ? "salzer" : "numerical"; }

WeightKind parse_weight_kind(std::string_view s) {
    if (s == "salzer") return WeightKind::salzer;
    if (s == "numerical") return WeightKind::numerical;
    throw std::invalid_argument("unknown weight kind: " + std::string(s));
}

double corollary_bound(WeightKind kind, int n, double eps) {
    return kind == WeightKind::salzer ? corollary_salzer_bound(n, eps) : corollary_numerical_bound(n, eps);
}

BoundReport replicate_corollary(WeightKind kind, int n, double eps) {
    check_corollary_range(n, eps);
    const double nn = static_cast<double>(n);
    const double zeta = kind == WeightKind::salzer ? 4.9248 * eps * nn * nn : 2.0001 * eps * nn;
    const double lambda = std::min(chebyshev_lebesgue_bound(n), kChebyshevLebesgueCap);
    return theorem_main_bounds(n, eps, zeta, 0.0, lambda);
}

DeltaBounds theorem_delta_bounds(double d, double zeta_inf, double lebesgue) {
    if (d < 0.0 || zeta_inf < 0.0 || !(lebesgue > 0.0)) throw std::invalid_argument("theorem_delta_bounds: invalid input");
    const double margin = (1.0 - zeta_inf) / lebesgue - zeta_inf - d;
    if (!(margin > 0.0)) {
        throw std::domain_error("d < (1 - zeta) / Lambda - zeta fails (margin " + std::to_string(margin) + ")");
    }
    const double denom = 1.0 - zeta_inf - (d + zeta_inf) * lebesgue;
    return {(d + zeta_inf) * (1.0 + lebesgue) / denom, (1.0 + d) * lebesgue / denom};
}

std::string CertificateChecks::first_failure() const {
    if (!zeta_range) return "2.5 (n+3) eps <= |zeta| <= 0.001";
    if (!k_maximal) return "|zeta_k| = |zeta|";
    if (!opposite_signs) return "zeta_k zeta_j <= 0";
    if (!near_node) return "0 < |(x - x_j) / w_j| S <= 0.01";
    if (!relative_gap) return "sup |(x - x_j) / (x_i - x_j)| < 0.01";
    return {};
}

CertificateOutcome lower_bound_certificate(std::span<const double> nodes, std::span<const HiPrec> reference_weights,
                                           std::span<const double> zeta, std::size_t j, std::size_t k, double x,
                                           double eps) {
    const std::size_t m = nodes.size();
    if (reference_weights.size() != m || zeta.size() != m || m < 2) {
        throw std::invalid_argument("lower_bound_certificate: length mismatch");
    }
    if (j >= m || k >= m) throw std::out_of_range("lower_bound_certificate: index out of range");
    const int n = static_cast<int>(m) - 1;
    double zinf = 0.0;
    for (double z : zeta) zinf = std::max(zinf, std::abs(z));

    CertificateOutcome out;
    auto& c = out.checks;
    c.zeta_range = 2.5 * (n + 3) * eps <= zinf && zinf <= 0.001;
    c.k_maximal = std::abs(zeta[k]) == zinf;
    c.opposite_signs = zeta[k] * zeta[j] <= 0.0;

    const double xj = nodes[j];
    double S = 0.0;
    double worst_gap = 0.0;
    const HiPrec dx = eft::two_diff(x, xj);
    for (std::size_t i = 0; i < m; ++i) {
        if (i == j) continue;
        const HiPrec gap = eft::two_diff(xj, nodes[i]);
        S += std::abs(hp_div(reference_weights[i], gap).to_double());
        worst_gap = std::max(worst_gap, std::abs(hp_div(dx, gap).to_double()));
    }
    const double near = std::abs(hp_div(dx, reference_weights[j]).to_double()) * S;
    c.near_node = near > 0.0 && near <= 0.01;
    c.relative_gap = worst_gap < 0.01;

    if (c.all()) {
        LowerBoundCertificate cert;
        cert.S = S;
        cert.j = j;
        cert.k = k;
        cert.x = x;
        cert.zeta_inf = zinf;
        cert.checks = c;
        cert.guaranteed_beta = kLowerBoundFactor * zinf;
        out.certificate = cert;
    }
    return out;
}

CertificateOutcome lower_bound_certificate(std::span<const double> nodes, const WeightSet& used,
                                           const WeightSet& reference, std::size_t j, std::size_t k, double x,
                                           double eps, bool rescale) {
    const auto zeta = compute_zeta(reference, used, rescale);
    return lower_bound_certificate(nodes, reference.weights, zeta, j, k, x, eps);
}

}  // namespace barylab
