// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "barylab/barycentric.hpp"
#include "barylab/bounds.hpp"
#include "barylab/exact.hpp"
#include "barylab/experiments.hpp"
#include "barylab/parallel.hpp"
#include "barylab/perturbation.hpp"
#include "barylab/reference_eval.hpp"
#include "support.hpp"

using namespace barylab;

namespace {

// Pinned tolerances.
constexpr double kOracleRelTol = 1e-25;
constexpr double kOracleSeconds = 60.0;
constexpr double kHiPrecUnit = 0x1p-104;
constexpr double kEnvelopeFactor = 4.0;
constexpr int kRandomCases = 1000;
constexpr double kTableFactor = 4.0;
constexpr double kTableMinutes = 15.0;
constexpr double kRatioLo = 1.0;
constexpr double kRatioHi = 4.0;
constexpr double kBoundEps = 2.3e-16;
constexpr double kSalzerSlopeLo = 1.65, kSalzerSlopeHi = 2.35;
constexpr double kNumericalSlopeLo = 0.65, kNumericalSlopeHi = 1.35;
constexpr double kCertificateSlack = 1e-25;
constexpr int kChiFamilies = 120;
constexpr int kChiGrid = 1000;
constexpr double kChiSlack = 1e-30;
constexpr int kDeltaFamilies = 100;
constexpr double kDistortionSlack = 1e-20;

struct Verdict {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct ReferenceRow {
    int n;
    double beta;
    double zeta_normalized;  // zeta / (eps n^2) for Salzer, zeta / (eps n) for numerical
};
constexpr ReferenceRow kSalzerRows[] = {{100, 1.8e-13, 0.070}, {1000, 2.4e-11, 0.098}};
constexpr ReferenceRow kNumericalRows[] = {{100, 5.2e-15, 0.099}, {1000, 4.2e-14, 0.093}};

bool within_factor(double v, double ref, double f) { return v >= ref / f && v <= ref * f; }

// Chebyshev or equispaced nodes, each moved by up to a quarter of its smaller neighbouring gap.
std::vector<double> jittered_nodes(std::mt19937_64& rng, int n) {
    std::vector<double> base(n + 1);
    const bool cheb = std::bernoulli_distribution(0.5)(rng);
    for (int k = 0; k <= n; ++k) base[k] = cheb ? -std::cos(M_PI * k / n) : -1.0 + 2.0 * k / n;
    std::uniform_real_distribution<double> u(-0.25, 0.25);
    std::vector<double> x = base;
    for (int k = 0; k <= n; ++k) {
        const double left = k > 0 ? base[k] - base[k - 1] : INFINITY;
        const double right = k < n ? base[k + 1] - base[k] : INFINITY;
        x[k] = std::clamp(base[k] + u(rng) * std::min(left, right), -1.0, 1.0);
    }
    return x;
}

struct OracleSweep {
    int cases = 0;
    double worst = 0.0;
    double worst_envelope_ratio = 0.0;
};

// Relative error of the double-double evaluation against the rational oracle, also measured against
// the envelope (2n+5) u (1 + L(x)) with u the double-double unit roundoff.
OracleSweep oracle_sweep(std::uint64_t seed, std::vector<double> (*draw)(std::mt19937_64&, int)) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(1, 12);
    std::uniform_real_distribution<double> uy(1.0, 2.0);
    OracleSweep s;
    while (s.cases < kRandomCases) {
        const int n = deg(rng);
        const auto f = custom_nodes(draw(rng, n), -1, 1);
        const auto w = lambda_weights(f, Precision::extended);
        std::vector<HiPrec> y;
        for (int k = 0; k <= n; ++k) y.emplace_back(uy(rng));
        const double x = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        const auto xr = to_rational(std::span<const HiPrec>(f.nodes_hi));
        const auto exact = eval_second_form_exact(xr, to_rational(std::span<const HiPrec>(w.weights)),
                                                  to_rational(std::span<const HiPrec>(y)), to_rational(x));
        if (exact == 0) continue;
        const double err = relative_error(eval_second_form_hp(f.nodes_hi, w.weights, y, HiPrec(x)), exact);
        const double envelope = (2 * n + 5) * kHiPrecUnit * (1.0 + lebesgue_function(f.nodes_wk, w.working(), x));
        s.worst = std::max(s.worst, err);
        s.worst_envelope_ratio = std::max(s.worst_envelope_ratio, err / envelope);
        ++s.cases;
    }
    return s;
}

Verdict oracle_equivalence() {
    const auto t0 = Clock::now();
    const auto main = oracle_sweep(20240101, jittered_nodes);
    const double secs = seconds_since(t0);
    const auto stress = oracle_sweep(20240102, testing::random_sorted_nodes);
    const bool ok = main.worst <= kOracleRelTol && main.worst_envelope_ratio <= kEnvelopeFactor &&
                    stress.worst_envelope_ratio <= kEnvelopeFactor && secs < kOracleSeconds;
    return {ok, fmt("%d jittered families, worst relative error %.2e (tol %.0e), %.1f s; "
                    "uniform-node stress set worst %.2e, worst error/envelope %.2f (limit %.0f)",
                    main.cases, main.worst, kOracleRelTol, secs, stress.worst, stress.worst_envelope_ratio,
                    kEnvelopeFactor)};
}

Verdict interpolation_properties() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> deg(1, 12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int hit_fail = 0, const_fail = 0, scale_fail = 0;
    for (int t = 0; t < kRandomCases; ++t) {
        const int n = deg(rng);
        const auto xs = testing::random_sorted_nodes(rng, n);
        std::vector<double> w, y;
        for (int k = 0; k <= n; ++k) {
            w.push_back(testing::random_double(rng, -4, 4));
            y.push_back(testing::random_double(rng, -4, 4));
        }
        const std::size_t j = static_cast<std::size_t>(t) % xs.size();
        if (eval_second_form(xs, w, y, xs[j]).value != y[j]) ++hit_fail;

        const double c = testing::random_double(rng, -10, 10);
        const std::vector<ExactRational> cr(xs.size(), to_rational(c));
        const double x = u(rng);
        try {
            if (eval_second_form_exact(to_rational(std::span<const double>(xs)), to_rational(std::span<const double>(w)),
                                       cr, to_rational(x)) != to_rational(c)) {
                ++const_fail;
            }
        } catch (const PoleError&) {
        }

        const int s = std::uniform_int_distribution<int>(-30, 30)(rng);
        std::vector<double> ws;
        for (double v : w) ws.push_back(std::ldexp(v, s));
        try {
            const double a = eval_second_form(xs, w, y, x).value;
            const double b = eval_second_form(xs, ws, y, x).value;
            if (std::memcmp(&a, &b, sizeof a) != 0) ++scale_fail;
        } catch (const PoleError&) {
        }
    }
    return {hit_fail == 0 && const_fail == 0 && scale_fail == 0,
            fmt("%d cases each: node-hit failures %d, constant failures %d, scale failures %d", kRandomCases, hit_fail,
                const_fail, scale_fail)};
}

Verdict lebesgue_consistency() {
    Verdict v;
    for (int n : {10, 100, 1000, 10000}) {
        const auto f = rounded(chebyshev_nodes(n));
        const auto w = salzer_weights(n);
        const int coarse = n >= 10000 ? 4 * n : 16 * n;
        const double a = lebesgue_constant(f.nodes_wk, w, -1, 1, coarse, default_thread_count()).value;
        const double b = lebesgue_constant(f.nodes_wk, w, -1, 1, 2 * coarse, default_thread_count()).value;
        const double bound = chebyshev_lebesgue_bound(n);
        const bool ok = a >= 1.0 && b <= bound && b >= a;
        v.pass = v.pass && ok;
        v.detail += fmt("n=%d: %.4f -> %.4f (bound %.4f)%s; ", n, a, b, bound, ok ? "" : " FAILED");
    }
    return v;
}

struct TableResults {
    std::vector<TableRun> runs;
    double minutes = 0.0;
    [[nodiscard]] const TableRun& find(WeightKind kind, int n) const {
        for (const auto& r : runs) {
            if (r.kind == kind && r.row.n == n) return r;
        }
        throw std::out_of_range("missing run");
    }
    [[nodiscard]] std::vector<ExperimentRow> rows(WeightKind kind) const {
        std::vector<ExperimentRow> out;
        for (const auto& r : runs) {
            if (r.kind == kind) out.push_back(r.row);
        }
        return out;
    }
};

Verdict table_reproduction(const TableResults& t) {
    Verdict v;
    for (const auto& p : kSalzerRows) {
        const auto& r = t.find(WeightKind::salzer, p.n).row;
        const bool ok = within_factor(r.beta, p.beta, kTableFactor) &&
                        within_factor(r.zeta_over_eps_n2, p.zeta_normalized, kTableFactor);
        v.pass = v.pass && ok;
        v.detail += fmt("salzer n=%d beta %.2e (reference %.1e) zeta/(eps n^2) %.3f (reference %.3f)%s; ", p.n, r.beta, p.beta,
                        r.zeta_over_eps_n2, p.zeta_normalized, ok ? "" : " FAILED");
    }
    for (const auto& p : kNumericalRows) {
        const auto& r = t.find(WeightKind::numerical, p.n).row;
        const bool ok = within_factor(r.beta, p.beta, kTableFactor) &&
                        within_factor(r.zeta_over_eps_n, p.zeta_normalized, kTableFactor);
        v.pass = v.pass && ok;
        v.detail += fmt("numerical n=%d beta %.2e (reference %.1e) zeta/(eps n) %.3f (reference %.3f)%s; ", p.n, r.beta,
                        p.beta, r.zeta_over_eps_n, p.zeta_normalized, ok ? "" : " FAILED");
    }
    const bool fast = t.minutes <= kTableMinutes;
    v.pass = v.pass && fast;
    v.detail += fmt("full default list in %.1f min (limit %.0f)", t.minutes, kTableMinutes);
    return v;
}

Verdict ratio_law(const TableResults& t) {
    Verdict v;
    int bad = 0;
    double lo = INFINITY, hi = 0.0;
    for (const auto& r : t.runs) {
        lo = std::min(lo, r.row.ratio);
        hi = std::max(hi, r.row.ratio);
        if (r.row.ratio < kRatioLo || r.row.ratio > kRatioHi) {
            ++bad;
            v.detail += fmt("%s n=%d ratio %.2f outside [1,4]; ", std::string(to_string(r.kind)).c_str(), r.row.n,
                            r.row.ratio);
        }
    }
    v.pass = bad == 0;
    v.detail += fmt("%zu rows, ratio range [%.2f, %.2f], %d outside", t.runs.size(), lo, hi, bad);
    return v;
}

Verdict bound_domination(const TableResults& t) {
    int bad = 0;
    double worst = 0.0;
    for (const auto& r : t.runs) {
        const double bound = corollary_bound(r.kind, r.row.n, kBoundEps);
        worst = std::max(worst, r.row.beta / bound);
        if (r.row.beta > bound) ++bad;
    }
    return {bad == 0, fmt("%zu rows, %d violations, largest beta/bound %.2e", t.runs.size(), bad, worst)};
}

Verdict growth_exponents(const TableResults& t) {
    const auto s = fit_loglog(t.rows(WeightKind::salzer), FitColumn::beta);
    const auto r = fit_loglog(t.rows(WeightKind::numerical), FitColumn::beta);
    const bool ok = s.slope >= kSalzerSlopeLo && s.slope <= kSalzerSlopeHi && r.slope >= kNumericalSlopeLo &&
                    r.slope <= kNumericalSlopeHi;
    return {ok, fmt("salzer slope %.3f in [%.2f, %.2f], numerical slope %.3f in [%.2f, %.2f], n %d..%d", s.slope,
                    kSalzerSlopeLo, kSalzerSlopeHi, r.slope, kNumericalSlopeLo, kNumericalSlopeHi, s.n_range.first,
                    s.n_range.second)};
}

Verdict certificate_soundness(const TableResults& t) {
    Verdict v;
    for (int n : {100, 1000}) {
        const auto& run = t.find(WeightKind::salzer, n);
        int bad = 0;
        double weakest = INFINITY;
        for (const auto& c : run.certificates) {
            weakest = std::min(weakest, std::abs(c.measured_beta) / c.guaranteed_beta);
            if (std::abs(c.measured_beta) < c.guaranteed_beta - kCertificateSlack) ++bad;
        }
        const bool ok = !run.certificates.empty() && bad == 0;
        v.pass = v.pass && ok;
        v.detail += fmt("n=%d: %zu certificates, %d unsound, min |beta|/(0.16 zeta) %.2f; ", n,
                        run.certificates.size(), bad, run.certificates.empty() ? 0.0 : weakest);
    }
    return v;
}

// Random reference/perturbed family pair with n <= 10 and delta < 1.
struct FamilyPair {
    NodeFamily ref;
    NodeFamily pert;
};

FamilyPair random_pair(std::mt19937_64& rng, double magnitude) {
    std::uniform_int_distribution<int> deg(1, 10);
    std::uniform_int_distribution<int> shape(0, 3);
    while (true) {
        const int n = deg(rng);
        const auto xs = testing::random_sorted_nodes(rng, n);
        const int s = shape(rng);
        const double lo = s & 1 ? xs.front() : -1.25;
        const double hi = s & 2 ? xs.back() : 1.25;
        const auto ref = custom_nodes(xs, lo, hi);
        try {
            auto pert = perturb_nodes(ref, magnitude, rng());
            if (compute_delta(ref, pert, false).delta < 1.0) return {ref, pert};
        } catch (const std::invalid_argument&) {
        }
    }
}

Verdict chi_suite() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int knot_fail = 0, mono_fail = 0, disp_fail = 0, dist_fail = 0;
    long points = 0;
    for (int fam = 0; fam < kChiFamilies; ++fam) {
        const auto [ref, pert] = random_pair(rng, std::ldexp(1.0, -3 - fam % 40));
        const auto chi = build_chi(pert, ref);
        const auto rep = compute_delta(ref, pert);
        for (std::size_t i = 0; i < chi.source_knots().size(); ++i) {
            if (!(chi(chi.source_knots()[i]) == chi.target_knots()[i])) ++knot_fail;
        }
        double disp = std::max(std::abs(ref.lo - pert.lo), std::abs(ref.hi - pert.hi));
        for (std::size_t k = 0; k < ref.size(); ++k) disp = std::max(disp, std::abs(ref.nodes_wk[k] - pert.nodes_wk[k]));

        const double a = chi.domain_lo(), b = chi.domain_hi();
        HiPrec prev;
        for (int g = 0; g <= kChiGrid; ++g) {
            const double p = g == kChiGrid ? b : a + (b - a) * g / kChiGrid;
            const HiPrec c = chi(p);
            if (g > 0 && !(prev < c)) ++mono_fail;
            prev = c;
            if (std::abs(hp_sub(c, HiPrec(p)).to_double()) > disp + kChiSlack) ++disp_fail;
            bool knot = false;
            for (const auto& k : chi.source_knots()) knot = knot || k == HiPrec(p);
            if (knot) continue;
            if (!chi_distortion(chi, rep, p).within) ++dist_fail;
            ++points;
        }
    }
    return {knot_fail + mono_fail + disp_fail + dist_fail == 0,
            fmt("%d family pairs, %ld grid points: knot %d, monotonicity %d, displacement %d, distortion %d failures",
                kChiFamilies, points, knot_fail, mono_fail, disp_fail, dist_fail)};
}

Verdict delta_theorem() {
    std::mt19937_64 rng(1337);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int families = 0, checks = 0, violations = 0, rejected = 0;
    double worst = 0.0;
    while (families < kDeltaFamilies) {
        const double mag = std::pow(10.0, -3 - 6 * (u(rng) + 1) / 2);
        const auto [ref, pert] = random_pair(rng, mag);
        const auto w = lambda_weights(ref, Precision::extended);
        std::vector<double> wh;
        for (const auto& v : w.weights) wh.push_back(v.to_double() / (1.0 + mag * u(rng)));
        const auto used = custom_weights(wh);
        const double zeta = max_abs(compute_zeta(w, used, false));

        const auto chi = build_chi(pert, ref);
        const auto rep = compute_delta(ref, pert);
        const double lam_grid = lebesgue_constant(ref.nodes_wk, w, ref.lo, ref.hi, 4096).value;
        const auto xr = to_rational(std::span<const HiPrec>(ref.nodes_hi));
        const auto xhr = to_rational(std::span<const HiPrec>(pert.nodes_hi));
        const auto wr = to_rational(std::span<const HiPrec>(w.weights));
        const auto whr = to_rational(std::span<const double>(wh));
        bool used_family = false;
        for (int s = 0; s < 10; ++s) {
            const double xh = pert.lo + (pert.hi - pert.lo) * (u(rng) + 1) / 2;
            if (std::binary_search(pert.nodes_wk.begin(), pert.nodes_wk.end(), xh)) continue;
            bool knot = false;
            for (const auto& k : chi.source_knots()) knot = knot || k == HiPrec(xh);
            if (knot) continue;
            const HiPrec at = chi(xh);
            const double d = chi_distortion(chi, rep, xh).distortion + kDistortionSlack;
            const double lam = std::max(lam_grid, lebesgue_function(ref.nodes_wk, w.working(), at.to_double()));
            DeltaBounds bound;
            try {
                bound = theorem_delta_bounds(d, zeta, lam);
            } catch (const std::domain_error&) {
                ++rejected;
                continue;
            }
            used_family = true;
            for (std::size_t k = 0; k < ref.size(); ++k) {
                std::vector<ExactRational> e(ref.size(), ExactRational(0));
                e[k] = 1;
                const ExactRational perturbed = eval_second_form_exact(xhr, whr, e, to_rational(xh));
                const ExactRational reference = eval_second_form_exact(xr, wr, e, to_rational(at));
                if (reference == 0) continue;
                const double beta = std::abs(ExactRational(perturbed / reference - 1).get_d());
                worst = std::max(worst, beta / bound.beta_bound);
                ++checks;
                if (beta > bound.beta_bound) ++violations;
            }
        }
        if (used_family) ++families;
    }
    return {violations == 0 && checks > 0,
            fmt("%d families, %d (k, x) checks, %d violations, largest beta/bound %.3f, %d points outside the hypothesis",
                families, checks, violations, worst, rejected)};
}

}  // namespace

int main(int argc, char** argv) {
    // --known-failure N: criterion N is expected to fail; the run succeeds only if exactly the
    // listed criteria fail.
    std::vector<int> known;
    for (int a = 1; a + 1 < argc; ++a) {
        if (std::string(argv[a]) == "--known-failure") known.push_back(std::atoi(argv[++a]));
    }
    std::vector<int> failed;
    auto report = [&](int id, const char* name, const Verdict& v) {
        std::printf("criterion %2d %-36s %s: %s\n", id, name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
        if (!v.pass) failed.push_back(id);
    };
    report(1, "oracle equivalence", oracle_equivalence());
    report(2, "interpolation and homogeneity", interpolation_properties());
    report(3, "Lebesgue bound consistency", lebesgue_consistency());

    TableResults tables;
    {
        ExperimentConfig cfg;
        cfg.threads = default_thread_count();
        const auto t0 = Clock::now();
        tables.runs = run_tables(default_n_values(), cfg);
        tables.minutes = seconds_since(t0) / 60.0;
    }
    report(4, "table reproduction", table_reproduction(tables));
    report(5, "ratio law", ratio_law(tables));
    report(6, "bound domination", bound_domination(tables));
    report(7, "growth exponents", growth_exponents(tables));
    report(8, "lower-bound certificate soundness", certificate_soundness(tables));
    report(9, "chi-map suite", chi_suite());
    report(10, "perturbation theorem domination", delta_theorem());

    std::printf("%zu of 10 criteria passed\n", 10 - failed.size());
    std::sort(known.begin(), known.end());
    if (!known.empty()) {
        std::printf("expected failures:");
        for (int k : known) std::printf(" %d", k);
        std::printf(", %s\n", failed == known ? "as expected" : "MISMATCH");
    }
    return failed == known ? 0 : 1;
}
