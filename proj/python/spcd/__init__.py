"""Sequential parallel comparison design (SPCD) trial simulation.

Simulate two-stage SPCD trials with latent placebo responders, compute the
conventional stage-1 / stage-2 / weighted estimators, the closed-form
expectations driven by responder misclassification, and Monte Carlo bias
grids. Everything is deterministic given a seed.
"""

from ._core import (
    AnalyticCell,
    BiasTarget,
    CellSummary,
    ClassifierKind,
    ClassifierSpec,
    EstimandSet,
    EstimateSet,
    EstimatorSummary,
    GridSpec,
    IdentifiabilityReport,
    InitSpec,
    MixtureFit,
    Participant,
    Responder,
    ThresholdMode,
    TrialDataset,
    TrialParams,
    UnbiasednessReport,
    classify_fixed,
    em_fit,
    empirical_npv,
    estimate_all,
    expected_estimates,
    identifiability_diagnostics,
    misclass_q1,
    oracle_classify,
    placebo_change_cdf,
    population_threshold,
    posterior_responsibility,
    quantile_threshold,
    run_cell,
    run_grid,
    simulate_trial,
    theta1,
    theta2,
    theta_weighted,
    true_estimands,
    unbiasedness_conditions,
)

__all__ = [
    "AnalyticCell",
    "BiasTarget",
    "CellSummary",
    "ClassifierKind",
    "ClassifierSpec",
    "EstimandSet",
    "EstimateSet",
    "EstimatorSummary",
    "GridSpec",
    "IdentifiabilityReport",
    "InitSpec",
    "MixtureFit",
    "Participant",
    "Responder",
    "ThresholdMode",
    "TrialDataset",
    "TrialParams",
    "UnbiasednessReport",
    "classify_fixed",
    "em_fit",
    "empirical_npv",
    "estimate_all",
    "expected_estimates",
    "identifiability_diagnostics",
    "misclass_q1",
    "oracle_classify",
    "placebo_change_cdf",
    "population_threshold",
    "posterior_responsibility",
    "quantile_threshold",
    "run_cell",
    "run_grid",
    "simulate_trial",
    "theta1",
    "theta2",
    "theta_weighted",
    "true_estimands",
    "unbiasedness_conditions",
]
