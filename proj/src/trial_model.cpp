#include "spcd/trial_model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spcd/errors.hpp"
#include "spcd/rng.hpp"

namespace spcd {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

// Deterministic Fisher-Yates driven by the (seed, tag) word stream.
void keyed_shuffle(std::vector<std::size_t>& items, std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t k = 0;
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::uint64_t j = rng::to_bounded(rng::word(seed, tag, 0, k++), i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace

void TrialParams::validate() const {
    require(std::isfinite(delta_nr), "delta_nr must be finite");
    require(std::isfinite(delta_placebo), "delta_placebo must be finite");
    require(std::isfinite(sigma_eps) && sigma_eps > 0.0, "sigma_eps must be positive");
    require(p_l >= 0.0 && p_l <= 1.0, "p_l must lie in [0, 1]");
    require(n >= 6, "n must be at least 6");
    require(active_frac_stage1 > 0.0 && active_frac_stage1 < 1.0,
            "active_frac_stage1 must lie in (0, 1)");
    require(active_frac_stage2 > 0.0 && active_frac_stage2 < 1.0,
            "active_frac_stage2 must lie in (0, 1)");
    require(responder_quantile > 0.0 && responder_quantile < 1.0,
            "responder_quantile must lie in (0, 1)");
    require(weight_w >= 0.0 && weight_w <= 1.0, "weight_w must lie in [0, 1]");
    require(std::isfinite(delta_all()), "derived delta_all must be finite");
}

EstimandSet true_estimands(const TrialParams& params) {
    params.validate();
    EstimandSet set;
    set.delta_nr = params.delta_nr;
    set.delta_placebo = params.delta_placebo;
    set.delta_pr = params.delta_nr - params.delta_placebo;
    set.delta_all = params.delta_nr - params.p_l * params.delta_placebo;
    return set;
}

TrialDataset simulate_trial(const TrialParams& params, std::uint64_t seed,
                            const ClassifierSpec& classifier) {
    params.validate();
    classifier.validate();

    const std::size_t n = params.n;
    const auto n_active =
        static_cast<std::size_t>(static_cast<double>(n) * params.active_frac_stage1);
    if (n_active == 0 || n_active >= n) {
        throw EmptyArmError("simulate_trial: stage-1 allocation leaves an arm empty (n=" +
                            std::to_string(n) + ")");
    }

    // Exact-count stage-1 allocation: shuffle indices, first n_active go active.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    keyed_shuffle(order, seed, rng::kStreamStage1Perm);
    std::vector<bool> active1(n, false);
    for (std::size_t k = 0; k < n_active; ++k) active1[order[k]] = true;

    TrialDataset ds;
    ds.params = params;
    ds.seed = seed;
    ds.participants.resize(n);

    const double sigma = params.sigma_eps;
    for (std::size_t i = 0; i < n; ++i) {
        Participant& p = ds.participants[i];
        p.y0 = sigma * rng::to_normal(rng::word(seed, rng::kStreamBaseline, i));
        p.l = rng::to_uniform(rng::word(seed, rng::kStreamLatent, i)) < params.p_l;
        p.a1 = active1[i];
        const double eps1 = sigma * rng::to_normal(rng::word(seed, rng::kStreamNoise1, i));
        p.y1 = p.y0 + params.delta_nr * (p.a1 ? 1.0 : 0.0) +
               params.delta_placebo * (p.l ? 1.0 : 0.0) * (p.a1 ? 0.0 : 1.0) + eps1;
        p.r = Responder::kNotApplicable;
    }

    // Classify placebo-arm participants only.
    double threshold = classifier.c;
    if (classifier.kind == ClassifierKind::kQuantileChange) {
        std::vector<double> placebo_changes;
        placebo_changes.reserve(n - n_active);
        for (const Participant& p : ds.participants) {
            if (!p.a1) placebo_changes.push_back(p.stage1_change());
        }
        threshold = quantile_threshold(placebo_changes, classifier.p_r);
    }
    std::vector<std::size_t> non_responders;
    for (std::size_t i = 0; i < n; ++i) {
        Participant& p = ds.participants[i];
        if (p.a1) continue;
        bool responder = false;
        switch (classifier.kind) {
            case ClassifierKind::kFixedThresholdChange:
            case ClassifierKind::kQuantileChange:
                responder = classify_fixed(p.y0, p.y1, threshold, ThresholdMode::kChange);
                break;
            case ClassifierKind::kFixedThresholdLevel:
                responder = classify_fixed(p.y0, p.y1, threshold, ThresholdMode::kLevel);
                break;
            case ClassifierKind::kOracle:
                responder = oracle_classify(p.l);
                break;
        }
        p.r = responder ? Responder::kResponder : Responder::kNonResponder;
        if (!responder) non_responders.push_back(i);
    }

    // Stage-2 re-randomization among classified non-responders; everyone else
    // continues on the stage-1 assignment.
    const auto n_nr_active = static_cast<std::size_t>(
        static_cast<double>(non_responders.size()) * params.active_frac_stage2);
    keyed_shuffle(non_responders, seed, rng::kStreamStage2Perm);
    std::vector<bool> active2(n, false);
    for (std::size_t k = 0; k < n_nr_active; ++k) active2[non_responders[k]] = true;

    for (std::size_t i = 0; i < n; ++i) {
        Participant& p = ds.participants[i];
        p.a2 = (p.a1 || p.r == Responder::kResponder) ? p.a1 : active2[i];
        const double eps2 = sigma * rng::to_normal(rng::word(seed, rng::kStreamNoise2, i));
        p.y2 = p.y1 + params.delta_nr * (p.a2 ? 1.0 : 0.0) +
               params.delta_placebo * (p.l ? 1.0 : 0.0) * (p.a2 ? 0.0 : 1.0) + eps2;
    }

    return ds;
}

}  // namespace spcd
