#include "barylab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "barylab/barycentric.hpp"
#include "barylab/parallel.hpp"
#include "barylab/perturbation.hpp"
#include "barylab/reference_eval.hpp"

namespace barylab {
namespace {

constexpr int kExtremeCount = 10;

void add_extremes(std::span<const double> zeta, std::vector<std::size_t>& out) {
    std::vector<std::size_t> order(zeta.size());
    std::iota(order.begin(), order.end(), 0);
    // Descending by value, ties to the lower index.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return zeta[a] > zeta[b]; });
    const std::size_t m = std::min<std::size_t>(kExtremeCount, order.size());
    out.insert(out.end(), order.begin(), order.begin() + m);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return zeta[a] < zeta[b]; });
    out.insert(out.end(), order.begin(), order.begin() + m);
}

bool is_node(std::span<const double> nodes, double x) { return std::binary_search(nodes.begin(), nodes.end(), x); }

// Per-kind working data for one degree.
struct KindData {
    WeightKind kind;
    std::vector<double> w;
    std::vector<double> zeta;
    double zeta_inf = 0.0;
};

// Per-j results, one PairMax per (kind, k) in index order.
struct ColumnResult {
    std::vector<std::vector<PairMax>> pairs;  // [kind][k position]
    std::vector<std::size_t> samples;
    std::vector<std::size_t> skipped;
};

void keep_larger(PairMax& m, double beta, double x) {
    ++m.samples;
    if (std::abs(beta) > std::abs(m.beta)) {
        m.beta = beta;
        m.x = x;
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

}  // namespace

std::vector<int> default_n_values() { return {10, 20, 40, 60, 80, 100, 200, 400, 1000, 2000, 4000, 10000}; }

ExperimentRow make_row(int n, double beta, double zeta_inf, double eps) {
    ExperimentRow r;
    const double nn = static_cast<double>(n);
    r.n = n;
    r.beta = beta;
    r.zeta_inf = zeta_inf;
    r.ratio = zeta_inf > 0.0 ? beta / zeta_inf : 0.0;
    r.beta_over_eps_n = beta / (eps * nn);
    r.zeta_over_eps_n = zeta_inf / (eps * nn);
    r.beta_over_eps_n2 = beta / (eps * nn * nn);
    r.zeta_over_eps_n2 = zeta_inf / (eps * nn * nn);
    return r;
}

bool CertificateRecord::holds() const { return std::abs(measured_beta) >= guaranteed_beta; }

std::vector<std::size_t> select_indexes(std::span<const double> zeta_r, std::span<const double> zeta_s, int n) {
    if (n < 2) throw std::invalid_argument("select_indexes requires n >= 2");
    const auto len = static_cast<std::size_t>(n) + 1;
    if (zeta_r.size() != len || zeta_s.size() != len) {
        throw std::invalid_argument("select_indexes: zeta vectors must have n + 1 entries");
    }
    std::vector<std::size_t> out{0, static_cast<std::size_t>(n / 2), static_cast<std::size_t>(n)};
    add_extremes(zeta_r, out);
    add_extremes(zeta_s, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> trial_points(std::span<const double> nodes, std::size_t j, int count, double lo, double hi) {
    if (j >= nodes.size()) throw std::out_of_range("trial_points: node index out of range");
    if (count < 0) throw std::invalid_argument("trial_points: negative count");
    std::vector<double> pts;
    const double xj = nodes[j];
    if (j > 0) {
        double x = xj;
        for (int i = 0; i < count; ++i) {
            x = std::nextafter(x, -INFINITY);
            if (x < lo) break;
            pts.push_back(x);
        }
        std::reverse(pts.begin(), pts.end());
    }
    if (j + 1 < nodes.size()) {
        double x = xj;
        for (int i = 0; i < count; ++i) {
            x = std::nextafter(x, INFINITY);
            if (x > hi) break;
            pts.push_back(x);
        }
    }
    return pts;
}

std::optional<double> backward_error_sample(const NodeFamily& family, const WeightSet& used,
                                            const WeightSet& reference, std::size_t k, double x) {
    if (is_node(family.nodes_wk, x)) return std::nullopt;
    const EvalResult fl = eval_lagrange_basis(family.nodes_wk, used, k, x);
    const std::vector<HiPrec> nodes(family.nodes_wk.begin(), family.nodes_wk.end());
    const HiPrec ref = eval_lagrange_basis_hp(nodes, reference.weights, k, HiPrec(x));
    if (ref.hi == 0.0) return std::nullopt;
    return hp_div(hp_sub(HiPrec(fl.value), ref), ref).to_double();
}

WeightSet used_weights(WeightKind kind, const NodeFamily& rounded_family) {
    if (kind == WeightKind::salzer) return salzer_weights(rounded_family.n);
    return lambda_weights(rounded_family, Precision::working);
}

std::vector<TableRun> run_degree(int n, std::span<const WeightKind> kinds, const ExperimentConfig& config) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("run_degree requires an even n >= 2, got " + std::to_string(n));
    if (n > kDeskScaleMaxN && !config.allow_large_n) {
        throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the desk-scale limit; enable large runs explicitly");
    }
    if (config.trial_count < 1) throw std::invalid_argument("trial_count must be >= 1");
    if (kinds.empty()) throw std::invalid_argument("run_degree: no weight kind requested");

    const NodeFamily family = rounded(chebyshev_nodes(n));
    const std::span<const double> nodes = family.nodes_wk;
    const WeightSet reference = lambda_weights(family, Precision::extended);
    const std::vector<HiPrec>& lambda = reference.weights;

    const auto zeta_s = compute_zeta(reference, salzer_weights(n), true);
    const auto zeta_r = compute_zeta(reference, lambda_weights(family, Precision::working), false);
    const auto indexes = select_indexes(zeta_r, zeta_s, n);

    std::vector<KindData> data;
    for (WeightKind kind : kinds) {
        KindData d{kind, used_weights(kind, family).working(), kind == WeightKind::salzer ? zeta_s : zeta_r, 0.0};
        d.zeta_inf = max_abs(d.zeta);
        data.push_back(std::move(d));
    }

    const auto middle = static_cast<std::size_t>(n / 2);
    std::vector<std::size_t> columns;
    for (std::size_t j : indexes) {
        if (j != middle) columns.push_back(j);
    }

    std::vector<ColumnResult> results(columns.size());
    parallel_chunks(columns.size(), config.threads, columns.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
        std::vector<HiPrec> ref_num(indexes.size());
        std::vector<double> den(data.size());
        for (std::size_t c = begin; c < end; ++c) {
            const std::size_t j = columns[c];
            ColumnResult& res = results[c];
            res.pairs.assign(data.size(), std::vector<PairMax>(indexes.size()));
            res.samples.assign(data.size(), 0);
            res.skipped.assign(data.size(), 0);
            for (auto& per_kind : res.pairs) {
                for (std::size_t p = 0; p < indexes.size(); ++p) {
                    per_kind[p].k = indexes[p];
                    per_kind[p].j = j;
                }
            }
            for (double x : trial_points(nodes, j, config.trial_count, family.lo, family.hi)) {
                if (is_node(nodes, x)) {
                    for (auto& s : res.skipped) s += indexes.size() - 1;
                    continue;
                }
                HiPrec ref_den;
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    ref_den = hp_add(ref_den, hp_div(lambda[i], eft::two_diff(x, nodes[i])));
                }
                for (std::size_t d = 0; d < data.size(); ++d) den[d] = denominator_sum(nodes, data[d].w, x);
                for (std::size_t p = 0; p < indexes.size(); ++p) {
                    const std::size_t k = indexes[p];
                    if (k == j) continue;
                    const HiPrec ref = hp_div(hp_div(lambda[k], eft::two_diff(x, nodes[k])), ref_den);
                    for (std::size_t d = 0; d < data.size(); ++d) {
                        if (ref.hi == 0.0 || den[d] == 0.0) {
                            ++res.skipped[d];
                            continue;
                        }
                        const double fl = (data[d].w[k] / (x - nodes[k])) / den[d];
                        if (!std::isfinite(fl)) {
                            ++res.skipped[d];
                            continue;
                        }
                        const double beta = hp_div(hp_sub(HiPrec(fl), ref), ref).to_double();
                        keep_larger(res.pairs[d][p], beta, x);
                        ++res.samples[d];
                    }
                }
            }
        }
    });

    std::vector<TableRun> runs;
    for (std::size_t d = 0; d < data.size(); ++d) {
        TableRun run;
        run.kind = data[d].kind;
        run.indexes = indexes;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            run.samples += results[c].samples[d];
            run.skipped += results[c].skipped[d];
            for (const auto& pm : results[c].pairs[d]) {
                if (pm.k != pm.j && pm.samples > 0) run.pairs.push_back(pm);
            }
        }
        std::sort(run.pairs.begin(), run.pairs.end(),
                  [](const PairMax& a, const PairMax& b) { return std::pair(a.k, a.j) < std::pair(b.k, b.j); });
        if (run.samples == 0) throw std::runtime_error("no valid samples for n = " + std::to_string(n));
        double beta = 0.0;
        for (const auto& pm : run.pairs) {
            if (std::abs(pm.beta) > beta) {
                beta = std::abs(pm.beta);
                run.worst_k = pm.k;
                run.worst_j = pm.j;
                run.worst_x = pm.x;
            }
        }
        run.row = make_row(n, beta, data[d].zeta_inf);

        // Lower-bound certificates next to each column node, for the maximal |zeta_k|.
        const auto& zeta = data[d].zeta;
        const WeightSet used = custom_weights(data[d].w);
        for (std::size_t k : indexes) {
            if (std::abs(zeta[k]) != data[d].zeta_inf) continue;
            for (std::size_t j : columns) {
                if (j == k || zeta[k] * zeta[j] > 0.0) continue;
                for (double dir : {-INFINITY, INFINITY}) {
                    const double x = std::nextafter(nodes[j], dir);
                    if (x < family.lo || x > family.hi || is_node(nodes, x)) continue;
                    const auto outcome = lower_bound_certificate(nodes, lambda, zeta, j, k, x, config.certificate_eps);
                    if (!outcome.certificate) continue;
                    const auto measured = backward_error_sample(family, used, reference, k, x);
                    if (!measured) continue;
                    run.certificates.push_back({k, j, x, outcome.certificate->S, outcome.certificate->guaranteed_beta,
                                                *measured});
                }
            }
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

std::vector<TableRun> run_table(std::span<const int> n_values, WeightKind kind, const ExperimentConfig& config,
                                const std::function<void(const TableRun&)>& on_run) {
    std::vector<TableRun> out;
    const WeightKind kinds[] = {kind};
    for (int n : n_values) {
        auto runs = run_degree(n, kinds, config);
        if (on_run) on_run(runs.front());
        out.push_back(std::move(runs.front()));
    }
    return out;
}

std::vector<TableRun> run_tables(std::span<const int> n_values, const ExperimentConfig& config,
                                 const std::function<void(const TableRun&)>& on_run) {
    std::vector<TableRun> out;
    const WeightKind kinds[] = {WeightKind::salzer, WeightKind::numerical};
    for (int n : n_values) {
        for (auto& run : run_degree(n, kinds, config)) {
            if (on_run) on_run(run);
            out.push_back(std::move(run));
        }
    }
    return out;
}

RowVerdict check_run(const TableRun& run, double bound_eps) {
    RowVerdict v;
    v.ratio_in_range = run.row.ratio >= 1.0 && run.row.ratio <= 4.0;
    if (run.row.n >= 10) v.dominated = run.row.beta <= corollary_bound(run.kind, run.row.n, bound_eps);
    for (const auto& c : run.certificates) {
        if (!c.holds() || run.row.beta < c.guaranteed_beta) v.certificates_hold = false;
    }
    return v;
}

FitResult fit_loglog(std::span<const ExperimentRow> rows, FitColumn column) {
    if (rows.size() < 3) throw std::invalid_argument("fit_loglog needs at least 3 rows");
    std::vector<double> xs, ys;
    FitResult f;
    f.n_range = {rows.front().n, rows.front().n};
    for (const auto& r : rows) {
        const double v = column == FitColumn::beta ? r.beta : r.zeta_inf;
        if (!(v > 0.0) || r.n <= 0) throw std::invalid_argument("fit_loglog needs positive n and values");
        xs.push_back(std::log(static_cast<double>(r.n)));
        ys.push_back(std::log(v));
        f.n_range.first = std::min(f.n_range.first, r.n);
        f.n_range.second = std::max(f.n_range.second, r.n);
    }
    const double m = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog needs at least two distinct n");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

void write_csv(std::ostream& out, std::span<const ExperimentRow> rows, std::string_view section) {
    if (!section.empty()) out << "# " << section << '\n';
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.n;
        for (double v : {r.beta, r.zeta_inf, r.ratio, r.beta_over_eps_n, r.zeta_over_eps_n, r.beta_over_eps_n2,
                         r.zeta_over_eps_n2}) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

std::vector<ExperimentRow> read_csv(std::istream& in, std::string_view section) {
    std::vector<std::pair<std::string, std::vector<ExperimentRow>>> tables;
    bool expect_header = true;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.starts_with("# ")) {
            tables.emplace_back(line.substr(2), std::vector<ExperimentRow>{});
            expect_header = true;
            continue;
        }
        if (expect_header) {
            if (line != kCsvHeader) throw std::runtime_error("CSV header mismatch");
            if (tables.empty()) tables.emplace_back("", std::vector<ExperimentRow>{});
            expect_header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8) throw std::runtime_error("CSV row with " + std::to_string(cells.size()) + " fields");
        ExperimentRow r;
        try {
            r.n = std::stoi(cells[0]);
            double* fields[] = {&r.beta, &r.zeta_inf, &r.ratio, &r.beta_over_eps_n, &r.zeta_over_eps_n,
                                &r.beta_over_eps_n2, &r.zeta_over_eps_n2};
            for (std::size_t i = 0; i < 7; ++i) *fields[i] = std::stod(cells[i + 1]);
        } catch (const std::logic_error&) {
            throw std::runtime_error("malformed CSV row: " + line);
        }
        tables.back().second.push_back(r);
    }
    if (tables.empty()) throw std::runtime_error("CSV header mismatch");
    if (section.empty()) {
        if (tables.size() > 1) throw std::runtime_error("CSV holds several tables; name one");
        return tables.front().second;
    }
    for (auto& [name, rows] : tables) {
        if (name == section) return rows;
    }
    throw std::runtime_error("no CSV section named " + std::string(section));
}

void write_json(std::ostream& out, std::span<const TableRun> runs) {
    using nlohmann::json;
    json doc = json::array();
    for (const auto& run : runs) {
        const auto& r = run.row;
        json jr = {{"kind", std::string(to_string(run.kind))},
                   {"n", r.n},
                   {"beta", r.beta},
                   {"zeta_inf", r.zeta_inf},
                   {"ratio", r.ratio},
                   {"beta_over_eps_n", r.beta_over_eps_n},
                   {"zeta_over_eps_n", r.zeta_over_eps_n},
                   {"beta_over_eps_n2", r.beta_over_eps_n2},
                   {"zeta_over_eps_n2", r.zeta_over_eps_n2},
                   {"worst", {{"k", run.worst_k}, {"j", run.worst_j}, {"x", run.worst_x}}},
                   {"samples", run.samples},
                   {"skipped", run.skipped},
                   {"indexes", run.indexes}};
        json pairs = json::array();
        for (const auto& p : run.pairs) {
            pairs.push_back({{"k", p.k}, {"j", p.j}, {"beta", p.beta}, {"x", p.x}, {"samples", p.samples}});
        }
        jr["pairs"] = std::move(pairs);
        json certs = json::array();
        for (const auto& c : run.certificates) {
            certs.push_back({{"k", c.k},
                             {"j", c.j},
                             {"x", c.x},
                             {"S", c.S},
                             {"guaranteed_beta", c.guaranteed_beta},
                             {"measured_beta", c.measured_beta},
                             {"holds", c.holds()}});
        }
        jr["certificates"] = std::move(certs);
        doc.push_back(std::move(jr));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace barylab
