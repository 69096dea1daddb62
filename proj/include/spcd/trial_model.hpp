#pragma once

// Trial parameters, estimands and the SPCD data generating process.
//
// The generative model is the two-stage linear-Gaussian one:
//
//   Y0 ~ N(0, sigma_eps^2)
//   L  ~ Bernoulli(p_L)
//   Y1 = Y0 + delta_nr * A1 + delta_placebo * L * (1 - A1) + eps1
//   R  = classifier(Y0, Y1) on the placebo arm only
//   Y2 = Y1 + delta_nr * A2 + delta_placebo * L * (1 - A2) + eps2
//
// with eps1, eps2 ~ N(0, sigma_eps^2). Stage-1 and stage-2 arms use
// exact-count allocation: floor(n * fraction) participants go to active
// treatment via a seeded permutation, the remainder to placebo.

#include <cstdint>
#include <vector>

#include "spcd/classify.hpp"

namespace spcd {

struct TrialParams {
    double delta_nr = 0.5;        // ATE for placebo non-responders
    double delta_placebo = 1.0;   // average placebo effect
    double sigma_eps = 1.0;       // residual SD at t = 0, 1, 2
    double p_l = 0.5;             // latent responder prevalence P(L = 1)
    std::size_t n = 300;          // total participants
    double active_frac_stage1 = 1.0 / 3.0;
    double active_frac_stage2 = 0.5;
    double responder_quantile = 0.5;  // p_r
    double weight_w = 0.5;            // weight for theta_w

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    double delta_all() const { return delta_nr - p_l * delta_placebo; }

    bool operator==(const TrialParams&) const = default;
};

// The four average effects implied by a parameter set.
struct EstimandSet {
    double delta_all;
    double delta_nr;
    double delta_pr;
    double delta_placebo;
};

EstimandSet true_estimands(const TrialParams& params);

// Classified responder label; placebo-arm participants only.
enum class Responder : std::int8_t {
    kNotApplicable = -1,  // active arm, never classified
    kNonResponder = 0,
    kResponder = 1,
};

struct Participant {
    double y0;
    bool l;  // latent truth, retained for oracle checks
    bool a1;
    double y1;
    Responder r;
    bool a2;
    double y2;

    double stage1_change() const { return y1 - y0; }
    double stage2_change() const { return y2 - y1; }
};

struct TrialDataset {
    TrialParams params;
    std::uint64_t seed;
    std::vector<Participant> participants;
};

// Simulate one complete trial. Deterministic given (params, seed, classifier);
// every random draw is keyed by (seed, variable, participant index), so the
// result does not depend on threading or evaluation order. Throws
// EmptyArmError when the stage-1 allocation leaves an arm empty.
TrialDataset simulate_trial(const TrialParams& params, std::uint64_t seed,
                            const ClassifierSpec& classifier);

}  // namespace spcd
