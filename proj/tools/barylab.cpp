// Command-line front end: nodes, weights, Lebesgue estimates, backward-error
// tables, bound calculators, lower-bound certificates and log-log fits.
//
// Exit codes: 0 ok, 1 usage or runtime error, 2 a checked invariant failed.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "barylab/barycentric.hpp"
#include "barylab/bounds.hpp"
#include "barylab/errors.hpp"
#include "barylab/exact.hpp"
#include "barylab/experiments.hpp"
#include "barylab/parallel.hpp"
#include "barylab/perturbation.hpp"

namespace {

using namespace barylab;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

std::string extended_text(const HiPrec& v) {
    mpf_class f(0, 256);
    f = to_rational(v);
    char buf[128];
    gmp_snprintf(buf, sizeof buf, "%.32Fe", f.get_mpf_t());
    return buf;
}

std::string sci(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

WeightSet weights_for(const std::string& kind, const NodeFamily& f) {
    if (kind == "salzer") return salzer_weights(f.n);
    if (kind == "numerical") return lambda_weights(f, Precision::working);
    if (kind == "reference") return lambda_weights(f, Precision::extended);
    throw CLI::ValidationError("--kind", "expected salzer, numerical or reference");
}

struct Options {
    int n = 10;
    std::string kind = "salzer";
    int grid = 0;
    double perturb = 0.0;
    std::uint64_t seed = 1;
    std::vector<int> n_list;
    int trials = kDefaultTrialCount;
    int threads = default_thread_count();
    std::string out;
    std::string format = "csv";
    bool allow_large = false;
    double eps = 2.3e-16;
    std::optional<double> zeta;
    double delta = 0.0;
    std::optional<double> lambda;
    std::optional<std::size_t> cert_j;
    std::optional<std::size_t> cert_k;
    std::optional<double> cert_x;
    std::string in;
    std::string column = "beta";
    std::string section;
};

int cmd_nodes(const Options& o) {
    NodeFamily f = rounded(chebyshev_nodes(o.n));
    const NodeFamily exact = chebyshev_nodes(o.n);
    if (o.perturb > 0.0) {
        f = perturb_nodes(f, o.perturb, o.seed);
        std::cout << "# perturbed by " << sci(o.perturb) << " (seed " << o.seed << "), delta "
                  << sci(compute_delta(rounded(exact), f, false).delta) << '\n';
    }
    std::cout << "k,working,extended\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        const HiPrec& ext = o.perturb > 0.0 ? f.nodes_hi[k] : exact.nodes_hi[k];
        std::cout << k << ',' << sci(f.nodes_wk[k], 17) << ',' << extended_text(ext) << '\n';
    }
    return kExitOk;
}

int cmd_weights(const Options& o) {
    const NodeFamily f = rounded(chebyshev_nodes(o.n));
    const WeightSet w = weights_for(o.kind, f);
    std::cout << "# " << to_string(w.provenance) << " weights, diff_scale " << w.diff_scale << '\n';
    std::cout << "k,working,extended\n";
    for (std::size_t k = 0; k < w.size(); ++k) {
        std::cout << k << ',' << sci(w.weights[k].to_double(), 17) << ',' << extended_text(w.weights[k]) << '\n';
    }
    return kExitOk;
}

int cmd_lebesgue(const Options& o) {
    const NodeFamily f = rounded(chebyshev_nodes(o.n));
    const WeightSet w = weights_for(o.kind, f);
    const int grid = o.grid > 0 ? o.grid : 64 * o.n;
    const auto est = lebesgue_constant(f.nodes_wk, w, f.lo, f.hi, grid, o.threads);
    std::cout << "lebesgue_estimate " << sci(est.value) << " at x = " << sci(est.argmax, 17) << " (" << est.samples
              << " samples, lower estimate)\n";
    const double bound = chebyshev_lebesgue_bound(o.n);
    std::cout << "reference_bound 0.67667 ln n + 1.0236 = " << sci(bound) << '\n';
    if (est.value > bound) {
        std::cout << "VIOLATION: estimate exceeds the reference bound\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_table(const Options& o) {
    ExperimentConfig cfg;
    cfg.trial_count = o.trials;
    cfg.threads = o.threads;
    cfg.allow_large_n = o.allow_large;
    const std::vector<int> ns = o.n_list.empty() ? default_n_values() : o.n_list;

    if (!o.out.empty()) {
        const auto dir = std::filesystem::path(o.out).parent_path();
        if (!dir.empty() && !std::filesystem::is_directory(dir)) {
            throw std::runtime_error("output directory does not exist: " + dir.string());
        }
    }

    int status = kExitOk;
    auto report = [&](const TableRun& run) {
        const auto v = check_run(run);
        std::cerr << to_string(run.kind) << " n=" << run.row.n << " beta=" << sci(run.row.beta, 2)
                  << " zeta=" << sci(run.row.zeta_inf, 2) << " ratio=" << sci(run.row.ratio, 2)
                  << " certificates=" << run.certificates.size() << (v.ok() ? "" : "  INVARIANT VIOLATED") << '\n';
        if (!v.ok()) status = kExitViolation;
    };
    std::vector<TableRun> runs;
    if (o.kind == "both") {
        runs = run_tables(ns, cfg, report);
    } else {
        runs = run_table(ns, parse_weight_kind(o.kind), cfg, report);
    }

    auto emit = [&](std::ostream& out) {
        if (o.format == "json") {
            write_json(out, runs);
            return;
        }
        for (WeightKind kind : {WeightKind::salzer, WeightKind::numerical}) {
            std::vector<ExperimentRow> rows;
            for (const auto& r : runs) {
                if (r.kind == kind) rows.push_back(r.row);
            }
            if (rows.empty()) continue;
            write_csv(out, rows, o.kind == "both" ? to_string(kind) : std::string_view{});
        }
    };
    if (o.out.empty()) {
        emit(std::cout);
    } else {
        std::ofstream file(o.out);
        if (!file) throw std::runtime_error("cannot open " + o.out);
        emit(file);
        if (!file) throw std::runtime_error("write failed: " + o.out);
    }
    return status;
}

int cmd_bounds(const Options& o) {
    const WeightKind kind = parse_weight_kind(o.kind);
    BoundReport r;
    if (o.zeta) {
        const double lam = o.lambda.value_or(std::min(chebyshev_lebesgue_bound(o.n), kChebyshevLebesgueCap));
        r = theorem_main_bounds(o.n, o.eps, *o.zeta, o.delta, lam);
        std::cout << "mode measured\n";
    } else {
        r = replicate_corollary(kind, o.n, o.eps);
        std::cout << "mode analytic (" << to_string(kind) << ")\n";
    }
    std::cout << "lambda " << sci(r.lebesgue_used) << '\n';
    if (r.Z) std::cout << "Z " << sci(*r.Z) << '\n';
    if (!r.hypothesis_ok) {
        std::cout << "hypothesis failed: " << r.violated << '\n';
        return kExitViolation;
    }
    std::cout << "nu " << sci(r.values->nu_bound) << '\n'
              << "alpha " << sci(r.values->alpha_bound) << '\n'
              << "beta " << sci(r.values->beta_bound) << '\n';
    if (o.n >= 10 && o.n <= 2'000'000 && o.eps <= 2.3e-16) {
        std::cout << "corollary_salzer " << sci(corollary_salzer_bound(o.n, o.eps)) << '\n'
                  << "corollary_numerical " << sci(corollary_numerical_bound(o.n, o.eps)) << '\n';
    }
    return kExitOk;
}

int cmd_certificate(const Options& o) {
    const NodeFamily f = rounded(chebyshev_nodes(o.n));
    const WeightSet ref = lambda_weights(f, Precision::extended);
    const WeightKind kind = parse_weight_kind(o.kind);
    const WeightSet used = used_weights(kind, f);
    const auto zeta = compute_zeta(ref, used, kind == WeightKind::salzer);
    std::size_t k = 0;
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        if (std::abs(zeta[i]) > std::abs(zeta[k])) k = i;
    }
    if (o.cert_k) k = *o.cert_k;
    std::size_t j = k == 0 ? 1 : 0;
    if (o.cert_j) {
        j = *o.cert_j;
    } else {
        for (std::size_t i = 0; i < zeta.size(); ++i) {
            if (i != k && 2 * i != static_cast<std::size_t>(o.n) && zeta[i] * zeta[k] <= 0.0) {
                j = i;
                break;
            }
        }
    }
    if (j >= f.size() || k >= f.size()) throw std::out_of_range("index out of range");
    const double x = o.cert_x.value_or(std::nextafter(f.nodes_wk[j], j + 1 < f.size() ? 2.0 : -2.0));
    const auto outcome = lower_bound_certificate(f.nodes_wk, ref.weights, zeta, j, k, x, kTableEps);
    std::cout << "k " << k << "\nj " << j << "\nx " << sci(x, 17) << "\nzeta_inf " << sci(max_abs(zeta)) << '\n';
    const auto& c = outcome.checks;
    std::cout << "check_zeta_range " << c.zeta_range << "\ncheck_k_maximal " << c.k_maximal
              << "\ncheck_opposite_signs " << c.opposite_signs << "\ncheck_near_node " << c.near_node
              << "\ncheck_relative_gap " << c.relative_gap << '\n';
    if (!outcome.certificate) {
        std::cout << "no certificate: " << outcome.failure() << '\n';
        return kExitOk;
    }
    const auto measured = backward_error_sample(f, used, ref, k, x);
    std::cout << "S " << sci(outcome.certificate->S) << "\nguaranteed_beta " << sci(outcome.certificate->guaranteed_beta)
              << '\n';
    if (!measured) {
        std::cout << "measured_beta unavailable\n";
        return kExitOk;
    }
    std::cout << "measured_beta " << sci(*measured) << '\n';
    if (std::abs(*measured) < outcome.certificate->guaranteed_beta) {
        std::cout << "VIOLATION: measured backward error below the certified lower bound\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_fit(const Options& o) {
    std::ifstream in(o.in);
    if (!in) throw std::runtime_error("cannot open " + o.in);
    const auto rows = read_csv(in, o.section);
    const auto f = fit_loglog(rows, o.column == "zeta" ? FitColumn::zeta : FitColumn::beta);
    std::cout << "slope " << sci(f.slope) << "\nintercept " << sci(f.intercept) << "\nr2 " << sci(f.r2)
              << "\nn_range " << f.n_range.first << ' ' << f.n_range.second << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stability laboratory for the second barycentric formula"};
    app.require_subcommand(1);
    Options o;
    auto positive = CLI::PositiveNumber;
    const auto degree = CLI::Range(1, 100'000'000);

    auto* nodes = app.add_subcommand("nodes", "Rounded Chebyshev points of the second kind");
    nodes->add_option("-n,--n", o.n, "degree")->required()->check(degree);
    nodes->add_option("--perturb", o.perturb, "relative random perturbation magnitude")->check(CLI::NonNegativeNumber);
    nodes->add_option("--seed", o.seed, "seed for --perturb");

    auto* weights = app.add_subcommand("weights", "Barycentric weights on rounded Chebyshev points");
    weights->add_option("-n,--n", o.n, "degree")->required()->check(degree);
    weights->add_option("--kind", o.kind, "salzer, numerical or reference")
        ->check(CLI::IsMember({"salzer", "numerical", "reference"}));

    auto* leb = app.add_subcommand("lebesgue", "Lower estimate of the Lebesgue constant");
    leb->add_option("-n,--n", o.n, "degree")->required()->check(degree);
    leb->add_option("--grid", o.grid, "total sample budget (default 64 per gap)")->check(CLI::Range(2, 1 << 30));
    leb->add_option("--kind", o.kind, "weights")->check(CLI::IsMember({"salzer", "numerical", "reference"}));
    leb->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 1024));

    auto* table = app.add_subcommand("table", "Maximum backward errors for Lagrange polynomials");
    table->add_option("-n,--n", o.n_list, "degrees (default: desk-scale list)")->check(degree);
    table->add_option("--kind", o.kind, "salzer, numerical or both")
        ->check(CLI::IsMember({"salzer", "numerical", "both"}));
    table->add_option("--trials", o.trials, "trial points per side of each node")->check(CLI::Range(1, 1 << 24));
    table->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 1024));
    table->add_option("-o,--out", o.out, "output file (default stdout)");
    table->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    table->add_flag("--allow-large-n", o.allow_large, "permit n above 10000");

    auto* bounds = app.add_subcommand("bounds", "Backward-error bound calculator");
    bounds->add_option("-n,--n", o.n, "degree")->required()->check(degree);
    bounds->add_option("--kind", o.kind, "salzer or numerical")->check(CLI::IsMember({"salzer", "numerical"}));
    bounds->add_option("--eps", o.eps, "unit roundoff")->check(positive);
    bounds->add_option("--zeta", o.zeta, "measured weight error (switches to measured mode)")
        ->check(CLI::NonNegativeNumber);
    bounds->add_option("--delta", o.delta, "measured node distortion")->check(CLI::NonNegativeNumber);
    bounds->add_option("--lambda", o.lambda, "Lebesgue constant")->check(positive);

    auto* cert = app.add_subcommand("certificate", "Lower-bound certificate next to a node");
    cert->add_option("-n,--n", o.n, "degree (even)")->required()->check(degree);
    cert->add_option("--kind", o.kind, "salzer or numerical")->check(CLI::IsMember({"salzer", "numerical"}));
    cert->add_option("-j", o.cert_j, "node index near x");
    cert->add_option("-k", o.cert_k, "Lagrange index (default: largest |zeta|)");
    cert->add_option("-x", o.cert_x, "evaluation point (default: next double after x_j)");

    auto* fit = app.add_subcommand("fit", "Least-squares log-log fit of a table CSV");
    fit->add_option("--in", o.in, "CSV produced by `table`")->required()->check(CLI::ExistingFile);
    fit->add_option("--column", o.column, "beta or zeta")->check(CLI::IsMember({"beta", "zeta"}));
    fit->add_option("--kind", o.section, "table to fit when the file holds both kinds")
        ->check(CLI::IsMember({"salzer", "numerical"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*nodes) return cmd_nodes(o);
        if (*weights) return cmd_weights(o);
        if (*leb) return cmd_lebesgue(o);
        if (*table) return cmd_table(o);
        if (*bounds) return cmd_bounds(o);
        if (*cert) return cmd_certificate(o);
        if (*fit) return cmd_fit(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
