#pragma once

// The conventional SPCD estimators.
//
//   theta1 = mean(Y1 - Y0 | A1 = 1) - mean(Y1 - Y0 | A1 = 0)
//   theta2 = mean(Y2 - Y1 | A1 = 0, R = 0, A2 = 1)
//          - mean(Y2 - Y1 | A1 = 0, R = 0, A2 = 0)
//   theta_w = w * theta1 + (1 - w) * theta2

#include <cstddef>

#include "spcd/trial_model.hpp"

namespace spcd {

struct EstimateSet {
    double theta1;
    double theta2;
    double theta_w;
    double w;
    std::size_t n_a;   // stage-1 active
    std::size_t n_p;   // stage-1 placebo
    std::size_t n_nr;  // classified non-responders
    std::size_t n_pr;  // classified responders
    std::size_t n_pa;  // non-responders re-randomized to active
    std::size_t n_pp;  // non-responders re-randomized to placebo
};

// Stage-1 difference in mean changes. Throws EmptyArmError if an arm is empty.
double theta1(const TrialDataset& dataset);

// Stage-2 difference in mean changes among classified non-responders.
// Throws EmptyStage2ArmError if either re-randomized arm is empty.
double theta2(const TrialDataset& dataset);

// Affine combination; w must lie in [0, 1].
double theta_weighted(double theta1, double theta2, double w);

// All three estimators plus the partition counts, w taken from the dataset
// parameters.
EstimateSet estimate_all(const TrialDataset& dataset);

}  // namespace spcd
