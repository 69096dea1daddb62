// Python bindings for the spcd core: trial simulation, classifiers,
// estimators, closed-form expectations, the mixture EM and the Monte Carlo
// harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spcd/analytic.hpp"
#include "spcd/classify.hpp"
#include "spcd/estimators.hpp"
#include "spcd/mixture_em.hpp"
#include "spcd/montecarlo.hpp"
#include "spcd/trial_model.hpp"

namespace py = pybind11;
using namespace spcd;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sequential parallel comparison design simulation core";

    py::class_<TrialParams>(m, "TrialParams")
        .def(py::init<>())
        .def_readwrite("delta_nr", &TrialParams::delta_nr)
        .def_readwrite("delta_placebo", &TrialParams::delta_placebo)
        .def_readwrite("sigma_eps", &TrialParams::sigma_eps)
        .def_readwrite("p_l", &TrialParams::p_l)
        .def_readwrite("n", &TrialParams::n)
        .def_readwrite("active_frac_stage1", &TrialParams::active_frac_stage1)
        .def_readwrite("active_frac_stage2", &TrialParams::active_frac_stage2)
        .def_readwrite("responder_quantile", &TrialParams::responder_quantile)
        .def_readwrite("weight_w", &TrialParams::weight_w)
        .def("validate", &TrialParams::validate)
        .def("delta_all", &TrialParams::delta_all);

    py::class_<EstimandSet>(m, "EstimandSet")
        .def_readonly("delta_all", &EstimandSet::delta_all)
        .def_readonly("delta_nr", &EstimandSet::delta_nr)
        .def_readonly("delta_pr", &EstimandSet::delta_pr)
        .def_readonly("delta_placebo", &EstimandSet::delta_placebo);
    m.def("true_estimands", &true_estimands, py::arg("params"));

    py::enum_<ClassifierKind>(m, "ClassifierKind")
        .value("FIXED_THRESHOLD_CHANGE", ClassifierKind::kFixedThresholdChange)
        .value("FIXED_THRESHOLD_LEVEL", ClassifierKind::kFixedThresholdLevel)
        .value("QUANTILE_CHANGE", ClassifierKind::kQuantileChange)
        .value("ORACLE", ClassifierKind::kOracle);

    py::class_<ClassifierSpec>(m, "ClassifierSpec")
        .def_static("fixed_change", &ClassifierSpec::fixed_change, py::arg("c"))
        .def_static("fixed_level", &ClassifierSpec::fixed_level, py::arg("c"))
        .def_static("quantile_change", &ClassifierSpec::quantile_change, py::arg("p_r"))
        .def_static("oracle", &ClassifierSpec::oracle)
        .def_readonly("kind", &ClassifierSpec::kind)
        .def_readonly("c", &ClassifierSpec::c)
        .def_readonly("p_r", &ClassifierSpec::p_r)
        .def("name", &ClassifierSpec::name);

    py::enum_<Responder>(m, "Responder")
        .value("NOT_APPLICABLE", Responder::kNotApplicable)
        .value("NON_RESPONDER", Responder::kNonResponder)
        .value("RESPONDER", Responder::kResponder);

    py::class_<Participant>(m, "Participant")
        .def_readonly("y0", &Participant::y0)
        .def_readonly("l", &Participant::l)
        .def_readonly("a1", &Participant::a1)
        .def_readonly("y1", &Participant::y1)
        .def_readonly("r", &Participant::r)
        .def_readonly("a2", &Participant::a2)
        .def_readonly("y2", &Participant::y2)
        .def("stage1_change", &Participant::stage1_change)
        .def("stage2_change", &Participant::stage2_change);

    py::class_<TrialDataset>(m, "TrialDataset")
        .def_readonly("params", &TrialDataset::params)
        .def_readonly("seed", &TrialDataset::seed)
        .def_readonly("participants", &TrialDataset::participants);
    m.def("simulate_trial", &simulate_trial, py::arg("params"), py::arg("seed"),
          py::arg("classifier"));

    py::enum_<ThresholdMode>(m, "ThresholdMode")
        .value("CHANGE", ThresholdMode::kChange)
        .value("LEVEL", ThresholdMode::kLevel);
    m.def("classify_fixed", &classify_fixed, py::arg("y0"), py::arg("y1"), py::arg("c"),
          py::arg("mode"));
    m.def("quantile_threshold", &quantile_threshold, py::arg("placebo_changes"), py::arg("p_r"));
    m.def("oracle_classify", &oracle_classify, py::arg("l"));
    m.def("empirical_npv", &empirical_npv, py::arg("dataset"));

    py::class_<EstimateSet>(m, "EstimateSet")
        .def_readonly("theta1", &EstimateSet::theta1)
        .def_readonly("theta2", &EstimateSet::theta2)
        .def_readonly("theta_w", &EstimateSet::theta_w)
        .def_readonly("w", &EstimateSet::w)
        .def_readonly("n_a", &EstimateSet::n_a)
        .def_readonly("n_p", &EstimateSet::n_p)
        .def_readonly("n_nr", &EstimateSet::n_nr)
        .def_readonly("n_pr", &EstimateSet::n_pr)
        .def_readonly("n_pa", &EstimateSet::n_pa)
        .def_readonly("n_pp", &EstimateSet::n_pp);
    m.def("theta1", &theta1, py::arg("dataset"));
    m.def("theta2", &theta2, py::arg("dataset"));
    m.def("theta_weighted", &theta_weighted, py::arg("theta1"), py::arg("theta2"), py::arg("w"));
    m.def("estimate_all", &estimate_all, py::arg("dataset"));

    py::class_<AnalyticCell>(m, "AnalyticCell")
        .def_readonly("q1", &AnalyticCell::q1)
        .def_readonly("npv", &AnalyticCell::npv)
        .def_readonly("e_theta1", &AnalyticCell::e_theta1)
        .def_readonly("e_theta2", &AnalyticCell::e_theta2)
        .def_readonly("e_theta_w", &AnalyticCell::e_theta_w)
        .def_readonly("threshold_c", &AnalyticCell::threshold_c);
    m.def("placebo_change_cdf", &placebo_change_cdf, py::arg("params"), py::arg("d"));
    m.def("population_threshold", &population_threshold, py::arg("params"));
    m.def(
        "misclass_q1",
        [](const TrialParams& params) {
            const MisclassProbs mc = misclass_q1(params);
            return py::make_tuple(mc.q1, mc.npv);
        },
        py::arg("params"), "Returns (q1, npv) at the population threshold.");
    m.def("expected_estimates", &expected_estimates, py::arg("params"), py::arg("classifier"));

    py::enum_<BiasTarget>(m, "BiasTarget")
        .value("DELTA_ALL", BiasTarget::kDeltaAll)
        .value("DELTA_NR", BiasTarget::kDeltaNr)
        .value("BOTH", BiasTarget::kBoth)
        .value("NEITHER", BiasTarget::kNeither);

    py::class_<UnbiasednessReport>(m, "UnbiasednessReport")
        .def_readonly("no_responders", &UnbiasednessReport::no_responders)
        .def_readonly("no_placebo_effect", &UnbiasednessReport::no_placebo_effect)
        .def_readonly("classifier_independent_of_l",
                      &UnbiasednessReport::classifier_independent_of_l)
        .def_readonly("weight_is_one", &UnbiasednessReport::weight_is_one)
        .def_readonly("weight_zero_perfect_npv", &UnbiasednessReport::weight_zero_perfect_npv)
        .def_readonly("q1", &UnbiasednessReport::q1)
        .def_readonly("target", &UnbiasednessReport::target);
    m.def("unbiasedness_conditions", &unbiasedness_conditions, py::arg("params"),
          py::arg("classifier"), py::arg("w"));

    py::class_<InitSpec>(m, "InitSpec")
        .def_static("median_split", &InitSpec::median_split)
        .def_static("explicit_init", &InitSpec::explicit_init, py::arg("p"), py::arg("mu0"),
                    py::arg("mu1"), py::arg("sigma"));

    py::class_<MixtureFit>(m, "MixtureFit")
        .def_readonly("p_hat", &MixtureFit::p_hat)
        .def_readonly("mu0", &MixtureFit::mu0)
        .def_readonly("mu1", &MixtureFit::mu1)
        .def_readonly("sigma_hat", &MixtureFit::sigma_hat)
        .def_readonly("loglik", &MixtureFit::loglik)
        .def_readonly("iterations", &MixtureFit::iterations)
        .def_readonly("converged", &MixtureFit::converged)
        .def_readonly("loglik_trace", &MixtureFit::loglik_trace);
    m.def("em_fit", &em_fit, py::arg("changes"), py::arg("init") = InitSpec::median_split(),
          py::arg("tol") = kEmDefaultTol, py::arg("max_iter") = kEmDefaultMaxIter);
    m.def("posterior_responsibility", &posterior_responsibility, py::arg("fit"), py::arg("d"));

    py::class_<IdentifiabilityReport>(m, "IdentifiabilityReport")
        .def_readonly("separation", &IdentifiabilityReport::separation)
        .def_readonly("boundary_distance", &IdentifiabilityReport::boundary_distance)
        .def_readonly("weak", &IdentifiabilityReport::weak);
    m.def("identifiability_diagnostics", &identifiability_diagnostics, py::arg("fit"));

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("base", &GridSpec::base)
        .def_readwrite("delta_all", &GridSpec::delta_all)
        .def_readwrite("delta_placebo_values", &GridSpec::delta_placebo_values)
        .def_readwrite("sigma_values", &GridSpec::sigma_values)
        .def_readwrite("n_reps", &GridSpec::n_reps)
        .def_readwrite("master_seed", &GridSpec::master_seed)
        .def_readwrite("classifiers", &GridSpec::classifiers)
        .def("cell_params", &GridSpec::cell_params, py::arg("delta_placebo"),
             py::arg("sigma_eps"));

    py::class_<EstimatorSummary>(m, "EstimatorSummary")
        .def_readonly("mean", &EstimatorSummary::mean)
        .def_readonly("se", &EstimatorSummary::se)
        .def_readonly("bias_all", &EstimatorSummary::bias_all)
        .def_readonly("bias_nr", &EstimatorSummary::bias_nr);

    py::class_<CellSummary>(m, "CellSummary")
        .def_readonly("delta_placebo", &CellSummary::delta_placebo)
        .def_readonly("sigma_eps", &CellSummary::sigma_eps)
        .def_readonly("classifier", &CellSummary::classifier)
        .def_readonly("n_reps", &CellSummary::n_reps)
        .def_readonly("used", &CellSummary::used)
        .def_readonly("skipped", &CellSummary::skipped)
        .def_readonly("theta1", &CellSummary::theta1)
        .def_readonly("theta2", &CellSummary::theta2)
        .def_readonly("theta_w", &CellSummary::theta_w)
        .def_readonly("npv_mean", &CellSummary::npv_mean)
        .def_readonly("npv_se", &CellSummary::npv_se)
        .def_readonly("analytic", &CellSummary::analytic);
    m.def("run_cell", &run_cell, py::arg("params"), py::arg("classifier"), py::arg("n_reps"),
          py::arg("cell_seed"), py::arg("parallelism") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_grid", &run_grid, py::arg("spec"), py::arg("parallelism") = 1,
          py::call_guard<py::gil_scoped_release>());
}
