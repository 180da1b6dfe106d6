#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "barylab/barycentric.hpp"
#include "barylab/bounds.hpp"
#include "barylab/errors.hpp"
#include "barylab/experiments.hpp"
#include "barylab/nodes_weights.hpp"
#include "barylab/perturbation.hpp"

namespace py = pybind11;
using namespace barylab;

namespace {

py::dict row_dict(const TableRun& run) {
    const auto& r = run.row;
    py::dict d;
    d["kind"] = std::string(to_string(run.kind));
    d["n"] = r.n;
    d["beta"] = r.beta;
    d["zeta_inf"] = r.zeta_inf;
    d["ratio"] = r.ratio;
    d["beta_over_eps_n"] = r.beta_over_eps_n;
    d["zeta_over_eps_n"] = r.zeta_over_eps_n;
    d["beta_over_eps_n2"] = r.beta_over_eps_n2;
    d["zeta_over_eps_n2"] = r.zeta_over_eps_n2;
    d["certificates"] = run.certificates.size();
    d["ok"] = check_run(run).ok();
    return d;
}

ExperimentRow row_from(const py::dict& d) {
    return make_row(d["n"].cast<int>(), d["beta"].cast<double>(), d["zeta_inf"].cast<double>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stability laboratory for the second barycentric interpolation formula";

    py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);

    py::class_<NodeFamily>(m, "NodeFamily")
        .def_readonly("n", &NodeFamily::n)
        .def_readonly("nodes", &NodeFamily::nodes_wk)
        .def_readonly("lo", &NodeFamily::lo)
        .def_readonly("hi", &NodeFamily::hi)
        .def("__len__", &NodeFamily::size);

    py::class_<WeightSet>(m, "WeightSet")
        .def_property_readonly("values", &WeightSet::working)
        .def_property_readonly("provenance", [](const WeightSet& w) { return std::string(to_string(w.provenance)); })
        .def_readonly("diff_scale", &WeightSet::diff_scale)
        .def("__len__", &WeightSet::size);

    m.def("chebyshev_nodes", [](int n, bool round) { return round ? rounded(chebyshev_nodes(n)) : chebyshev_nodes(n); },
          py::arg("n"), py::arg("rounded") = true);
    m.def("custom_nodes", py::overload_cast<std::vector<double>, double, double>(&custom_nodes), py::arg("nodes"),
          py::arg("lo"), py::arg("hi"));
    m.def("perturb_nodes", &perturb_nodes, py::arg("family"), py::arg("magnitude"), py::arg("seed"));
    m.def("salzer_weights", &salzer_weights, py::arg("n"));
    m.def(
        "lambda_weights",
        [](const NodeFamily& f, bool extended, double diff_scale) {
            return lambda_weights(f, extended ? Precision::extended : Precision::working, diff_scale);
        },
        py::arg("family"), py::arg("extended") = false, py::arg("diff_scale") = 2.0);
    m.def("custom_weights", &custom_weights, py::arg("weights"));

    m.def(
        "eval_second_form",
        [](const std::vector<double>& x, const std::vector<double>& w, const std::vector<double>& y, double at) {
            return eval_second_form(x, w, y, at).value;
        },
        py::arg("nodes"), py::arg("weights"), py::arg("values"), py::arg("x"));
    m.def(
        "eval_lagrange_basis",
        [](const std::vector<double>& x, const std::vector<double>& w, std::size_t k, double at) {
            return eval_lagrange_basis(x, w, k, at).value;
        },
        py::arg("nodes"), py::arg("weights"), py::arg("k"), py::arg("x"));

    m.def(
        "lebesgue_constant",
        [](const NodeFamily& f, const WeightSet& w, int grid, int threads) {
            return lebesgue_constant(f.nodes_wk, w, f.lo, f.hi, grid, threads).value;
        },
        py::arg("family"), py::arg("weights"), py::arg("grid"), py::arg("threads") = 1);

    m.def("compute_zeta", &compute_zeta, py::arg("reference"), py::arg("used"), py::arg("rescale") = false);
    m.def(
        "compute_delta",
        [](const NodeFamily& ref, const NodeFamily& pert) { return compute_delta(ref, pert, false).delta; },
        py::arg("reference"), py::arg("perturbed"));

    m.def(
        "theorem_main_bounds",
        [](int n, double eps, double zeta, double delta, double lebesgue) {
            const auto r = theorem_main_bounds(n, eps, zeta, delta, lebesgue);
            py::dict d;
            d["hypothesis_ok"] = r.hypothesis_ok;
            d["violated"] = r.violated;
            d["Z"] = r.Z ? py::cast(*r.Z) : py::none();
            if (r.values) {
                d["nu"] = r.values->nu_bound;
                d["alpha"] = r.values->alpha_bound;
                d["beta"] = r.values->beta_bound;
            }
            return d;
        },
        py::arg("n"), py::arg("eps"), py::arg("zeta_inf"), py::arg("delta"), py::arg("lebesgue"));
    m.def("corollary_salzer_bound", &corollary_salzer_bound, py::arg("n"), py::arg("eps"));
    m.def("corollary_numerical_bound", &corollary_numerical_bound, py::arg("n"), py::arg("eps"));
    m.def(
        "theorem_delta_bounds",
        [](double d, double zeta, double lebesgue) {
            const auto b = theorem_delta_bounds(d, zeta, lebesgue);
            return py::make_tuple(b.beta_bound, b.lebesgue_perturbed_bound);
        },
        py::arg("d"), py::arg("zeta_inf"), py::arg("lebesgue"));

    m.def(
        "run_table",
        [](const std::vector<int>& ns, const std::string& kind, int trials, int threads) {
            ExperimentConfig cfg;
            cfg.trial_count = trials;
            cfg.threads = threads;
            std::vector<TableRun> runs;
            {
                py::gil_scoped_release release;
                runs = run_table(ns, parse_weight_kind(kind), cfg);
            }
            py::list rows;
            for (const auto& r : runs) rows.append(row_dict(r));
            return rows;
        },
        py::arg("n_values"), py::arg("kind") = "salzer", py::arg("trial_count") = kDefaultTrialCount,
        py::arg("threads") = 1);
    m.def(
        "fit_loglog",
        [](const py::list& rows, const std::string& column) {
            std::vector<ExperimentRow> rs;
            for (const auto& r : rows) rs.push_back(row_from(r.cast<py::dict>()));
            const auto f = fit_loglog(rs, column == "zeta" ? FitColumn::zeta : FitColumn::beta);
            return py::dict(py::arg("slope") = f.slope, py::arg("intercept") = f.intercept, py::arg("r2") = f.r2);
        },
        py::arg("rows"), py::arg("column") = "beta");
}
