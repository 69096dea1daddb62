#pragma once

// Monte Carlo study harness: per-cell replicate loops over a
// (delta_placebo, sigma_eps, classifier) grid with delta_all held fixed,
// aggregating estimator means, biases, standard errors and NPV.
//
// Replicate r of a cell uses seed derive_seed(cell_seed, kStreamReplicate, r);
// cell c of a grid uses derive_seed(master_seed, kStreamCell, c) with c the
// canonical (sorted) cell index. Replicates are pure functions of their seed
// and results are stored by replicate index before a sequential compensated
// aggregation pass, so summaries are bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spcd/analytic.hpp"
#include "spcd/classify.hpp"
#include "spcd/trial_model.hpp"

namespace spcd {

struct GridSpec {
    TrialParams base;        // delta_nr and delta_placebo are overridden per cell
    double delta_all = 0.0;  // held fixed; delta_nr = delta_all + p_l * delta_placebo
    std::vector<double> delta_placebo_values;
    std::vector<double> sigma_values;
    std::size_t n_reps = 2000;
    std::uint64_t master_seed = 42;
    std::vector<ClassifierSpec> classifiers;

    void validate() const;

    // Sorted, deduplicated copy; cell seeds attach to canonical coordinates.
    GridSpec canonical() const;

    // Trial parameters for one grid coordinate.
    TrialParams cell_params(double delta_placebo, double sigma_eps) const;

    bool operator==(const GridSpec&) const = default;
};

struct EstimatorSummary {
    double mean;
    double se;        // sample SD / sqrt(used); NaN when used < 2
    double bias_all;  // mean - delta_all
    double bias_nr;   // mean - delta_nr
};

struct CellSummary {
    double delta_placebo;
    double sigma_eps;
    ClassifierSpec classifier;
    std::size_t n_reps;
    std::size_t used;
    std::size_t skipped;  // replicates with an empty stage-2 arm
    EstimatorSummary theta1;
    EstimatorSummary theta2;
    EstimatorSummary theta_w;
    double npv_mean;
    double npv_se;
    AnalyticCell analytic;  // NaN fields when no closed form exists for the classifier
};

// One grid cell: n_reps replicates of simulate -> estimate -> NPV.
// Replicates whose stage-2 arm is empty are skipped and counted.
CellSummary run_cell(const TrialParams& params, const ClassifierSpec& classifier,
                     std::size_t n_reps, std::uint64_t cell_seed, unsigned parallelism = 1);

// All cells of the grid in canonical order (delta_placebo, sigma_eps,
// classifier name ascending).
std::vector<CellSummary> run_grid(const GridSpec& spec, unsigned parallelism = 1);

}  // namespace spcd
