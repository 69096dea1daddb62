#pragma once

// Closed-form expectations and misclassification probabilities under the
// linear-Gaussian DGP with the quantile-change classifier.
//
// The placebo-arm stage-1 change D = delta_placebo * L + eps1 follows the
// two-component normal mixture with CDF
//
//   F_D(d) = (1 - p_L) Phi(d / sigma) + p_L Phi((d - delta_placebo) / sigma).
//
// The population threshold q solves F_D(q) = p_r, and classified
// non-responders are {D < q}, giving
//
//   q1 = P(L = 1 | R = 0) = p_L Phi((q - delta_placebo) / sigma) / F_D(q).
//
// Estimator expectations follow:
//
//   E(theta1)  = delta_all
//   E(theta2)  = delta_nr - q1 * delta_placebo
//   E(theta_w) = delta_nr - delta_placebo * (w * p_L + (1 - w) * q1)
//
// with q1 = 0 under the oracle classifier.

#include <string>

#include "spcd/classify.hpp"
#include "spcd/trial_model.hpp"

namespace spcd {

struct AnalyticCell {
    double q1;           // P(L = 1 | R = 0)
    double npv;          // P(L = 0 | R = 0) = 1 - q1
    double e_theta1;
    double e_theta2;
    double e_theta_w;
    double threshold_c;  // population quantile of the placebo-arm change
};

// CDF of the placebo-arm stage-1 change at d.
double placebo_change_cdf(const TrialParams& params, double d);

// Population p_r quantile of the placebo-arm change, found by bisection on an
// auto-expanding bracket until |F_D(q) - p_r| <= 1e-12.
double population_threshold(const TrialParams& params);

struct MisclassProbs {
    double q1;
    double npv;
};

// Misclassification of the quantile-change classifier at the population
// threshold.
MisclassProbs misclass_q1(const TrialParams& params);

// Closed-form cell for the given classifier; supports quantile-change and
// oracle kinds only.
AnalyticCell expected_estimates(const TrialParams& params, const ClassifierSpec& classifier);

enum class BiasTarget { kDeltaAll, kDeltaNr, kBoth, kNeither };

std::string to_string(BiasTarget target);

// Which of the known sufficient conditions for unbiasedness hold, and what
// theta_w consequently targets.
struct UnbiasednessReport {
    bool no_responders;               // p_L = 0
    bool no_placebo_effect;           // delta_placebo = 0
    bool classifier_independent_of_l; // R independent of L (threshold rule with delta_placebo = 0)
    bool weight_is_one;               // w = 1
    bool weight_zero_perfect_npv;     // w = 0 and q1 = 0
    double q1;
    BiasTarget target;
};

UnbiasednessReport unbiasedness_conditions(const TrialParams& params,
                                           const ClassifierSpec& classifier, double w);

}  // namespace spcd
