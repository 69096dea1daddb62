#pragma once

// Shared test fixtures.

#include <cstdint>

#include "spcd/rng.hpp"
#include "spcd/trial_model.hpp"

namespace spcd::testsupport {

// Hand-built random dataset with 6..30 rows, every participant invariant
// satisfied, at least one row in each arm and each stage-2 arm.
inline TrialDataset random_small_dataset(std::uint64_t seed) {
    const std::size_t n = 6 + rng::to_bounded(rng::word(seed, 50, 0), 25);
    TrialDataset ds;
    ds.params = TrialParams{};
    ds.params.n = n;
    ds.seed = seed;
    ds.participants.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        Participant& p = ds.participants[i];
        p.y0 = 4.0 * (rng::to_uniform(rng::word(seed, 51, i)) - 0.5);
        p.y1 = p.y0 + 2.0 * (rng::to_uniform(rng::word(seed, 52, i)) - 0.5);
        p.y2 = p.y1 + 2.0 * (rng::to_uniform(rng::word(seed, 53, i)) - 0.5);
        p.l = rng::to_uniform(rng::word(seed, 54, i)) < 0.5;
        const std::uint64_t role = i < 4 ? i : rng::to_bounded(rng::word(seed, 55, i), 4);
        switch (role) {
            case 0:
                p.a1 = true;
                p.r = Responder::kNotApplicable;
                p.a2 = true;
                break;
            case 1:
                p.a1 = false;
                p.r = Responder::kResponder;
                p.a2 = false;
                break;
            case 2:
                p.a1 = false;
                p.r = Responder::kNonResponder;
                p.a2 = true;
                break;
            default:
                p.a1 = false;
                p.r = Responder::kNonResponder;
                p.a2 = false;
                break;
        }
    }
    return ds;
}

}  // namespace spcd::testsupport
