#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "barylab/bounds.hpp"
#include "barylab/nodes_weights.hpp"

namespace barylab {

/// Epsilon used for the normalized table columns (double spacing at 1).
inline constexpr double kTableEps = 0x1p-52;

inline constexpr int kDefaultTrialCount = 5000;
inline constexpr int kDeskScaleMaxN = 10'000;

/// Default desk-scale degree list.
[[nodiscard]] std::vector<int> default_n_values();

struct ExperimentRow {
    int n = 0;
    double beta = 0.0;
    double zeta_inf = 0.0;
    double ratio = 0.0;
    double beta_over_eps_n = 0.0;
    double zeta_over_eps_n = 0.0;
    double beta_over_eps_n2 = 0.0;
    double zeta_over_eps_n2 = 0.0;
};

/// Fills ratio and the normalized columns from n, beta, zeta_inf.
[[nodiscard]] ExperimentRow make_row(int n, double beta, double zeta_inf, double eps = kTableEps);

/// Largest |beta| seen for one (k, j) pair and where it occurred.
struct PairMax {
    std::size_t k = 0;
    std::size_t j = 0;
    double beta = 0.0;  // signed value with the largest magnitude
    double x = 0.0;
    std::size_t samples = 0;
};

struct CertificateRecord {
    std::size_t k = 0;
    std::size_t j = 0;
    double x = 0.0;
    double S = 0.0;
    double guaranteed_beta = 0.0;
    double measured_beta = 0.0;  // signed
    [[nodiscard]] bool holds() const;
};

/// Everything measured for one degree and one weight kind.
struct TableRun {
    WeightKind kind = WeightKind::salzer;
    ExperimentRow row;
    std::size_t worst_k = 0;
    std::size_t worst_j = 0;
    double worst_x = 0.0;
    std::size_t samples = 0;
    std::size_t skipped = 0;
    std::vector<std::size_t> indexes;
    std::vector<PairMax> pairs;
    std::vector<CertificateRecord> certificates;
};

struct ExperimentConfig {
    int trial_count = kDefaultTrialCount;
    int threads = 1;
    bool allow_large_n = false;  // n above kDeskScaleMaxN needs this
    double certificate_eps = kTableEps;
};

/// {0, n/2, n} with the ten largest and ten smallest entries of each zeta
/// vector by signed value (ties to the lower index), sorted and deduplicated.
[[nodiscard]] std::vector<std::size_t> select_indexes(std::span<const double> zeta_r, std::span<const double> zeta_s,
                                                      int n);

/// The `count` doubles just below nodes[j] (j > 0) and just above it (j < n),
/// restricted to [lo, hi], in ascending order.
[[nodiscard]] std::vector<double> trial_points(std::span<const double> nodes, std::size_t j, int count,
                                               double lo = -1.0, double hi = 1.0);

/// Backward error of the computed k-th Lagrange basis value at x against the
/// double-double reference with the reference weights; nullopt when x is a
/// node or the reference value is zero.
[[nodiscard]] std::optional<double> backward_error_sample(const NodeFamily& family, const WeightSet& used,
                                                          const WeightSet& reference, std::size_t k, double x);

/// Weights of the given kind for rounded Chebyshev nodes of degree n.
[[nodiscard]] WeightSet used_weights(WeightKind kind, const NodeFamily& rounded_family);

/// Runs the protocol for one degree and the requested kinds, sharing the
/// reference evaluation between them. Results follow the order of `kinds`.
[[nodiscard]] std::vector<TableRun> run_degree(int n, std::span<const WeightKind> kinds,
                                               const ExperimentConfig& config = {});

/// Runs every degree; `on_run` sees each result as soon as it is complete.
[[nodiscard]] std::vector<TableRun> run_table(std::span<const int> n_values, WeightKind kind,
                                              const ExperimentConfig& config = {},
                                              const std::function<void(const TableRun&)>& on_run = {});

/// Both kinds per degree, in the order salzer then numerical for each n.
[[nodiscard]] std::vector<TableRun> run_tables(std::span<const int> n_values, const ExperimentConfig& config = {},
                                               const std::function<void(const TableRun&)>& on_run = {});

/// Ratio range, bound domination and certificate soundness for one run.
struct RowVerdict {
    bool ratio_in_range = true;  // 1 <= beta / zeta <= 4
    bool dominated = true;       // beta <= corollary bound
    bool certificates_hold = true;
    [[nodiscard]] bool ok() const { return ratio_in_range && dominated && certificates_hold; }
};
[[nodiscard]] RowVerdict check_run(const TableRun& run, double bound_eps = 2.3e-16);

enum class FitColumn { beta, zeta };

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::pair<int, int> n_range{0, 0};
};

/// Least squares line through (ln n, ln value).
[[nodiscard]] FitResult fit_loglog(std::span<const ExperimentRow> rows, FitColumn column);

inline constexpr const char* kCsvHeader =
    "n,beta,zeta_inf,ratio,beta_over_eps_n,zeta_over_eps_n,beta_over_eps_n2,zeta_over_eps_n2";

/// Several tables can share one file: each is preceded by a "# <section>" line.
void write_csv(std::ostream& out, std::span<const ExperimentRow> rows, std::string_view section = {});
/// Rows of the named section, or of the only table when `section` is empty.
[[nodiscard]] std::vector<ExperimentRow> read_csv(std::istream& in, std::string_view section = {});
void write_json(std::ostream& out, std::span<const TableRun> runs);

}  // namespace barylab
