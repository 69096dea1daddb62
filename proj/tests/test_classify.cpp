#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "spcd/classify.hpp"
#include "spcd/errors.hpp"
#include "spcd/rng.hpp"
#include "spcd/trial_model.hpp"

using namespace spcd;

TEST_CASE("fixed threshold, change mode") {
    CHECK(classify_fixed(0.0, 1.0, 0.5, ThresholdMode::kChange));
    CHECK_FALSE(classify_fixed(0.0, 0.4, 0.5, ThresholdMode::kChange));
    // Inclusive boundary: change exactly at c counts as a responder.
    CHECK(classify_fixed(2.0, 2.5, 0.5, ThresholdMode::kChange));
    CHECK(classify_fixed(-1.0, -0.5, 0.5, ThresholdMode::kChange));
}

TEST_CASE("fixed threshold, level mode") {
    CHECK(classify_fixed(5.0, 1.0, 0.5, ThresholdMode::kLevel));
    CHECK_FALSE(classify_fixed(-5.0, 0.4, 0.5, ThresholdMode::kLevel));
    CHECK(classify_fixed(0.0, 0.5, 0.5, ThresholdMode::kLevel));
}

TEST_CASE("boundary agreement on an enumerated 5-point dataset") {
    // All pairwise thresholds drawn from the data itself; the >= convention
    // must classify the point sitting exactly on the threshold as responder.
    const std::vector<double> changes = {-1.0, 0.0, 0.25, 0.25, 2.0};
    for (double c : changes) {
        std::size_t responders = 0;
        for (double d : changes) {
            if (d >= c) ++responders;  // brute-force convention
        }
        std::size_t classified = 0;
        for (double d : changes) {
            if (classify_fixed(0.0, d, c, ThresholdMode::kChange)) ++classified;
        }
        CHECK(classified == responders);
    }
}

TEST_CASE("quantile threshold matches the sort-and-interpolate oracle") {
    CHECK(quantile_threshold({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile_threshold({5}, 0.5) == doctest::Approx(5.0));
    CHECK(quantile_threshold({0, 0, 0, 0}, 0.123) == doctest::Approx(0.0));
    CHECK_THROWS_AS(quantile_threshold({}, 0.5), std::invalid_argument);

    // Random lists against the independent oracle.
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng::to_bounded(rng::word(404, 1, trial), 40);
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = 10.0 * (rng::to_uniform(rng::word(404, 2, trial * 64 + i)) - 0.5);
        }
        const double p = rng::to_uniform(rng::word(404, 3, trial));
        CHECK(quantile_threshold(values, p) ==
              doctest::Approx(oracles::naive_quantile(values, p)).epsilon(1e-12));
    }
}

TEST_CASE("raising the change threshold never gains responders") {
    const double y0 = 0.3, y1 = 1.1;
    bool previous = true;
    for (double c = -3.0; c <= 3.0; c += 0.05) {
        const bool now = classify_fixed(y0, y1, c, ThresholdMode::kChange);
        if (!previous) CHECK_FALSE(now);
        previous = now;
    }
}

TEST_CASE("oracle classification is the latent status") {
    CHECK(oracle_classify(true));
    CHECK_FALSE(oracle_classify(false));

    TrialParams p;
    p.n = 200;
    const TrialDataset ds = simulate_trial(p, 11, ClassifierSpec::oracle());
    for (const Participant& part : ds.participants) {
        if (part.a1) continue;
        CHECK((part.r == Responder::kResponder) == part.l);
    }
    // Perfect negative predictive value whenever any L=0 exists in the arm.
    CHECK(empirical_npv(ds) == doctest::Approx(1.0));
}

TEST_CASE("npv is 1 when no placebo participant is a responder") {
    TrialParams p;
    p.p_l = 0.0;
    p.n = 60;
    const TrialDataset ds = simulate_trial(p, 3, ClassifierSpec::quantile_change(0.5));
    CHECK(empirical_npv(ds) == doctest::Approx(1.0));
}

TEST_CASE("npv is about one half when the classifier carries no signal") {
    TrialParams p;
    p.delta_placebo = 0.0;
    p.delta_nr = 0.0;
    p.p_l = 0.5;
    p.n = 20000;
    const TrialDataset ds = simulate_trial(p, 17, ClassifierSpec::quantile_change(0.5));
    // ~6667 classified non-responders; binomial SE ~ 0.006.
    CHECK(std::abs(empirical_npv(ds) - 0.5) < 0.025);
}

TEST_CASE("npv approaches 1 under noise-free separation") {
    TrialParams p;
    p.sigma_eps = 0.001;
    p.delta_placebo = 1.0;
    p.delta_nr = 0.5;
    p.p_l = 0.5;
    p.n = 10000;
    const TrialDataset ds = simulate_trial(p, 23, ClassifierSpec::quantile_change(0.5));
    // The empirical-median count pinning keeps this ~1 - 0.399/sqrt(n_P),
    // about 0.995 here.
    CHECK(empirical_npv(ds) > 0.985);
}

TEST_CASE("npv equals one minus the empirical misclassification share") {
    TrialParams p;
    p.n = 500;
    p.sigma_eps = 2.0;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const TrialDataset ds = simulate_trial(p, seed, ClassifierSpec::quantile_change(0.5));
        std::size_t nr = 0, nr_latent_responder = 0;
        for (const Participant& part : ds.participants) {
            if (part.a1 || part.r != Responder::kNonResponder) continue;
            ++nr;
            nr_latent_responder += part.l ? 1 : 0;
        }
        const double npv = empirical_npv(ds);
        CHECK(npv >= 0.0);
        CHECK(npv <= 1.0);
        CHECK(npv ==
              doctest::Approx(1.0 - double(nr_latent_responder) / double(nr)).epsilon(1e-12));
    }
}

TEST_CASE("npv errors when no one is classified non-responder") {
    TrialParams p;
    p.n = 60;
    // Threshold far below every change: everyone classified responder.
    const TrialDataset ds = simulate_trial(p, 2, ClassifierSpec::fixed_change(-1e9));
    CHECK_THROWS_AS(empirical_npv(ds), NoNonRespondersError);
}

TEST_CASE("classifier spec validation") {
    CHECK_THROWS_AS(ClassifierSpec::quantile_change(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ClassifierSpec::quantile_change(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ClassifierSpec::fixed_change(std::nan("")), std::invalid_argument);
    CHECK(ClassifierSpec::oracle().name() == "oracle");
    CHECK(ClassifierSpec::quantile_change(0.5).name() == "quantile-change");
}
