#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bonesoup/analytic.hpp"
#include "bonesoup/harness.hpp"

namespace py = pybind11;
using namespace bonesoup;

namespace {

py::dict report_dict(const Example21Report& r) {
    py::dict d;
    d["theta1"] = r.theta1.values();
    d["theta2"] = r.theta2.values();
    d["theta_star"] = r.theta_star.values();
    d["soup"] = r.soup.values();
    d["bone1"] = r.bone1.values();
    d["bone2"] = r.bone2.values();
    d["bone_merged"] = r.bone_merged.values();
    d["dist_soup"] = r.dist_soup;
    d["dist_bone"] = r.dist_bone;
    d["g_soup"] = r.g_soup;
    d["g_bone"] = r.g_bone;
    d["bone_closer"] = r.bone_closer;
    return d;
}

py::dict report_dict(const VerificationReport& r) {
    py::dict d;
    d["beta"] = r.beta;
    d["interval"] = py::make_tuple(r.interval_low, r.interval_high);
    d["grid_size"] = r.grid_size;
    d["violations"] = r.violations;
    d["worst_margin"] = r.worst_margin;
    d["worst_mu"] = r.worst_mu;
    d["passed"] = r.passed();
    return d;
}

py::dict report_dict(const MetricsReport& r) {
    py::dict d;
    d["hypervolume"] = r.hypervolume;
    d["inner_product"] = r.inner_product;
    d["controllability"] = r.controllability;
    d["front_length"] = r.front_length;
    d["sparsity"] = r.sparsity;
    d["spacing"] = r.spacing;
    return d;
}

}  // namespace

PYBIND11_MODULE(_bonesoup, m) {
    m.doc() = "Controllable multi-objective model merging via backbone reward combinations";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<IoFailure>(m, "IoFailure", PyExc_OSError);

    m.def(
        "build_circulant",
        [](int n, double beta) { return build_circulant(n, beta).entries(); },
        py::arg("n"), py::arg("beta"),
        "Symmetric circulant combination matrix: diagonal beta, off-diagonal (1-beta)/(n-1).");
    m.def(
        "random_catalog",
        [](int id) { return random_catalog(id).entries(); }, py::arg("id"),
        "Fixed 3x3 random baseline matrix, id in 1..8.");
    m.def(
        "validate_rules",
        [](const Matrix& mat) {
            const RuleReport r = validate_rules(mat);
            py::dict d;
            d["dominance"] = r.dominance;
            d["invertible"] = r.invertible;
            d["normalized"] = r.normalized;
            d["det"] = r.det;
            d["all_pass"] = r.all_pass();
            return d;
        },
        py::arg("matrix"), "Check the three combination-matrix design rules.");
    m.def("invert", [](const Matrix& mat) { return invert(mat); }, py::arg("matrix"));
    m.def("mixup_decompose", &mixup_decompose, py::arg("n"), py::arg("beta"),
          "Mixup weight xi with w_1 = xi * o_1 + (1 - xi) * uniform.");

    m.def(
        "solve_coefficients",
        [](const Matrix& mat, const Vec& mu) {
            CombinationMatrix cm(mat, MatrixProvenance::Custom);
            return solve_coefficients(cm, make_preference(mu)).values();
        },
        py::arg("matrix"), py::arg("preference"),
        "Merging weights lambda = B^{-1} mu; components may be negative.");
    m.def(
        "merge",
        [](const std::vector<Vec>& models, const Vec& lambda) {
            std::vector<ParamVector> params;
            for (const Vec& v : models) params.emplace_back(v);
            return linear_combination(params, lambda).values();
        },
        py::arg("models"), py::arg("coefficients"), "sum_i lambda_i * model_i");
    m.def(
        "extrapolate",
        [](const Vec& merged, const Vec& reference, double alpha) {
            return extrapolate(ParamVector(merged), ParamVector(reference), alpha).values();
        },
        py::arg("merged"), py::arg("reference"), py::arg("alpha"),
        "merged + alpha * (merged - reference)");

    m.def(
        "generate_grid",
        [](int n, double step) {
            std::vector<Vec> out;
            for (const PreferenceVector& p : generate_grid(n, step)) out.push_back(p.values());
            return out;
        },
        py::arg("n"), py::arg("step") = 0.1,
        "0.1-spaced preference lattice: 11 points for n=2, 66 for n=3.");

    m.def("hypervolume", &hypervolume, py::arg("points"), py::arg("reference"),
          "Exact dominated hypervolume for 2 or 3 objectives (maximization).");
    m.def("pareto_filter", &pareto_filter, py::arg("points"),
          "Maximal non-dominated subset in stable input order.");

    m.def(
        "example21", [] { return report_dict(example21()); },
        "Reproduce the two-objective analytic example (beta = 0.6, mu = 0.5).");
    m.def(
        "verify_theorem",
        [](double beta, double k1, double k2, const Vec& theta1, const Vec& theta2,
           int grid_size) {
            const IsotropicPair pair(k1, k2, ParamVector(theta1), ParamVector(theta2));
            return report_dict(verify_theorem(pair, beta, grid_size));
        },
        py::arg("beta"), py::arg("k1") = 1.0, py::arg("k2") = 4.0,
        py::arg("theta1") = Vec{1.0, 1.0}, py::arg("theta2") = Vec{3.0, -1.0},
        py::arg("grid_size") = 1001,
        "Numerically certify g(soup) < g(bone) across the guaranteed interval.");
    m.def(
        "theorem_interval", [](double beta) { return theorem_interval(beta); }, py::arg("beta"),
        "((1 - L)/2, (1 + L)/2) with L = sqrt(2 beta^2 - 2 beta + 1).");
    m.def(
        "merged_solution",
        [](double beta, double mu, double k1, double k2, const Vec& theta1, const Vec& theta2) {
            const IsotropicPair pair(k1, k2, ParamVector(theta1), ParamVector(theta2));
            return merged_solution(pair, beta, mu).values();
        },
        py::arg("beta"), py::arg("mu"), py::arg("k1"), py::arg("k2"), py::arg("theta1"),
        py::arg("theta2"), "Closed-form merged bone solution; beta = 1 gives the soup.");

    m.def(
        "sweep",
        [](const std::string& config_json) {
            const ExperimentConfig config = parse_config(config_json);
            const SweepResult result = run_sweep(config);
            return result_json(result);
        },
        py::arg("config_json"),
        "Run every configured method over the grid; returns the result JSON text.");
    m.def(
        "sweep_to_dir",
        [](const std::string& config_json, const std::string& out_dir) {
            const ExperimentConfig config = parse_config(config_json);
            const SweepResult result = run_sweep(config);
            emit_outputs(result, out_dir);
        },
        py::arg("config_json"), py::arg("out_dir"),
        "Run a sweep and write fronts.csv, metrics.csv, result.json, plotdata/.");
    m.def(
        "metrics_from_fronts",
        [](const std::string& fronts_csv_text, const Vec& reference) {
            py::dict out;
            for (const MethodRun& run : parse_fronts_csv(fronts_csv_text)) {
                out[py::str(run.name())] = report_dict(compute_metrics(run.front(), reference));
            }
            return out;
        },
        py::arg("fronts_csv_text"), py::arg("reference"),
        "Recompute all six metrics per method from a fronts.csv payload.");
}
