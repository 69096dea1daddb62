#include <doctest.h>

#include <cmath>
#include <future>
#include <stdexcept>

#include "spcd/errors.hpp"
#include "spcd/rng.hpp"
#include "spcd/trial_model.hpp"

using namespace spcd;

namespace {

bool datasets_identical(const TrialDataset& a, const TrialDataset& b) {
    if (a.participants.size() != b.participants.size()) return false;
    for (std::size_t i = 0; i < a.participants.size(); ++i) {
        const Participant &x = a.participants[i], &y = b.participants[i];
        if (x.y0 != y.y0 || x.l != y.l || x.a1 != y.a1 || x.y1 != y.y1 || x.r != y.r ||
            x.a2 != y.a2 || x.y2 != y.y2) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("params validation rejects bad fields by name") {
    TrialParams p;
    CHECK_NOTHROW(p.validate());

    p.sigma_eps = 0.0;
    CHECK_THROWS_WITH_AS(p.validate(), "sigma_eps must be positive", std::invalid_argument);
    p = TrialParams{};
    p.n = 5;
    CHECK_THROWS_WITH_AS(p.validate(), "n must be at least 6", std::invalid_argument);
    p = TrialParams{};
    p.p_l = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = TrialParams{};
    p.weight_w = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = TrialParams{};
    p.active_frac_stage1 = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = TrialParams{};
    p.responder_quantile = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("true_estimands follows the effect identities") {
    TrialParams p;
    p.delta_nr = 0.5;
    p.delta_placebo = 1.0;
    p.p_l = 0.5;
    EstimandSet e = true_estimands(p);
    CHECK(e.delta_all == doctest::Approx(0.0));
    CHECK(e.delta_pr == doctest::Approx(-0.5));

    // No placebo effect: everything collapses onto delta_nr.
    p.delta_placebo = 0.0;
    p.delta_nr = 0.7;
    e = true_estimands(p);
    CHECK(e.delta_all == doctest::Approx(0.7));
    CHECK(e.delta_pr == doctest::Approx(0.7));

    // No responders: delta_all equals delta_nr whatever the placebo effect is.
    p.delta_placebo = 3.0;
    p.p_l = 0.0;
    e = true_estimands(p);
    CHECK(e.delta_all == doctest::Approx(0.7));
}

TEST_CASE("noise-free DGP separates placebo changes by latent status") {
    TrialParams p;
    p.sigma_eps = 1e-12;
    p.delta_placebo = 1.0;
    p.delta_nr = 0.5;
    p.n = 120;
    const TrialDataset ds = simulate_trial(p, 99, ClassifierSpec::quantile_change(0.5));
    for (const Participant& part : ds.participants) {
        if (part.a1) continue;
        const double expected = part.l ? 1.0 : 0.0;
        CHECK(std::abs(part.stage1_change() - expected) < 1e-6);
    }
}

TEST_CASE("same seed gives bit-identical datasets") {
    TrialParams p;
    const auto classifier = ClassifierSpec::quantile_change(0.5);
    const TrialDataset a = simulate_trial(p, 1234, classifier);
    const TrialDataset b = simulate_trial(p, 1234, classifier);
    CHECK(datasets_identical(a, b));
    const TrialDataset c = simulate_trial(p, 1235, classifier);
    CHECK_FALSE(datasets_identical(a, c));
}

TEST_CASE("null design arm counts use floor allocation") {
    TrialParams p;
    p.p_l = 0.5;
    p.delta_placebo = 1.0;
    p.delta_nr = 0.5;  // delta_all = 0
    for (std::size_t n : {300u, 301u, 302u}) {
        p.n = n;
        const TrialDataset ds = simulate_trial(p, 5, ClassifierSpec::quantile_change(0.5));
        std::size_t actives = 0;
        for (const Participant& part : ds.participants) actives += part.a1 ? 1 : 0;
        CHECK(actives == n / 3);
    }
}

TEST_CASE("stage-2 allocation is exact-count among classified non-responders") {
    TrialParams p;
    p.n = 301;
    const TrialDataset ds = simulate_trial(p, 7, ClassifierSpec::quantile_change(0.5));
    std::size_t n_nr = 0, n_pa = 0;
    for (const Participant& part : ds.participants) {
        if (part.a1 || part.r != Responder::kNonResponder) continue;
        ++n_nr;
        n_pa += part.a2 ? 1 : 0;
    }
    CHECK(n_nr > 0);
    CHECK(n_pa == static_cast<std::size_t>(static_cast<double>(n_nr) * p.active_frac_stage2));
}

TEST_CASE("participant invariants hold on every generated row") {
    TrialParams p;
    p.n = 150;
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 77ull}) {
        for (const auto& classifier :
             {ClassifierSpec::quantile_change(0.5), ClassifierSpec::oracle(),
              ClassifierSpec::fixed_change(0.4)}) {
            const TrialDataset ds = simulate_trial(p, seed, classifier);
            for (const Participant& part : ds.participants) {
                CHECK((part.r == Responder::kNotApplicable) == part.a1);
                if (part.a1) CHECK(part.a2);
                if (!part.a1 && part.r == Responder::kResponder) CHECK_FALSE(part.a2);
            }
        }
    }
}

TEST_CASE("empty-arm error when n is too small for the fraction") {
    TrialParams p;
    p.n = 6;
    p.active_frac_stage1 = 0.1;  // floor(0.6) = 0 actives
    CHECK_THROWS_AS(simulate_trial(p, 1, ClassifierSpec::oracle()), EmptyArmError);
}

TEST_CASE("arm means converge to their estimand targets") {
    TrialParams p;
    p.n = 40000;
    p.delta_nr = 0.5;
    p.delta_placebo = 1.0;
    p.p_l = 0.5;
    p.sigma_eps = 1.0;
    const TrialDataset ds = simulate_trial(p, 2024, ClassifierSpec::quantile_change(0.5));

    double active_sum = 0.0, placebo_sum = 0.0;
    std::size_t n_a = 0, n_p = 0;
    for (const Participant& part : ds.participants) {
        if (part.a1) {
            active_sum += part.stage1_change();
            ++n_a;
        } else {
            placebo_sum += part.stage1_change();
            ++n_p;
        }
    }
    // Active-arm change has SD sigma; placebo arm adds the Bernoulli mixture term.
    const double se_active = p.sigma_eps / std::sqrt(double(n_a));
    const double placebo_var = p.sigma_eps * p.sigma_eps +
                               p.p_l * (1 - p.p_l) * p.delta_placebo * p.delta_placebo;
    const double se_placebo = std::sqrt(placebo_var / double(n_p));
    CHECK(std::abs(active_sum / double(n_a) - p.delta_nr) < 4 * se_active);
    CHECK(std::abs(placebo_sum / double(n_p) - p.p_l * p.delta_placebo) < 4 * se_placebo);
}

TEST_CASE("generation is identical across caller threads") {
    TrialParams p;
    p.n = 200;
    const auto classifier = ClassifierSpec::quantile_change(0.5);
    const TrialDataset main_thread = simulate_trial(p, 31337, classifier);
    auto future = std::async(std::launch::async,
                             [&] { return simulate_trial(p, 31337, classifier); });
    CHECK(datasets_identical(main_thread, future.get()));
}

TEST_CASE("rng words depend on every key component") {
    CHECK(rng::word(1, 2, 3) != rng::word(1, 2, 4));
    CHECK(rng::word(1, 2, 3) != rng::word(1, 3, 3));
    CHECK(rng::word(1, 2, 3) != rng::word(2, 2, 3));
    CHECK(rng::word(1, 2, 3, 0) != rng::word(1, 2, 3, 1));
    const double u = rng::to_uniform(rng::word(9, 9, 9));
    CHECK(u > 0.0);
    CHECK(u < 1.0);
}
