#pragma once

// Deliberately naive reference implementations used to cross-check the
// library. These must stay independent of the code paths they validate:
// plain double loops, no shared helpers.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spcd/trial_model.hpp"

namespace spcd::oracles {

inline double naive_theta1(const TrialDataset& ds) {
    double active_sum = 0.0;
    std::size_t active_count = 0;
    for (std::size_t i = 0; i < ds.participants.size(); ++i) {
        if (ds.participants[i].a1) {
            active_sum += ds.participants[i].y1 - ds.participants[i].y0;
            active_count += 1;
        }
    }
    double placebo_sum = 0.0;
    std::size_t placebo_count = 0;
    for (std::size_t i = 0; i < ds.participants.size(); ++i) {
        if (!ds.participants[i].a1) {
            placebo_sum += ds.participants[i].y1 - ds.participants[i].y0;
            placebo_count += 1;
        }
    }
    if (active_count == 0 || placebo_count == 0) throw std::runtime_error("naive_theta1: empty arm");
    return active_sum / double(active_count) - placebo_sum / double(placebo_count);
}

inline double naive_theta2(const TrialDataset& ds) {
    double active_sum = 0.0;
    std::size_t active_count = 0;
    for (std::size_t i = 0; i < ds.participants.size(); ++i) {
        const Participant& p = ds.participants[i];
        if (!p.a1 && p.r == Responder::kNonResponder && p.a2) {
            active_sum += p.y2 - p.y1;
            active_count += 1;
        }
    }
    double placebo_sum = 0.0;
    std::size_t placebo_count = 0;
    for (std::size_t i = 0; i < ds.participants.size(); ++i) {
        const Participant& p = ds.participants[i];
        if (!p.a1 && p.r == Responder::kNonResponder && !p.a2) {
            placebo_sum += p.y2 - p.y1;
            placebo_count += 1;
        }
    }
    if (active_count == 0 || placebo_count == 0) {
        throw std::runtime_error("naive_theta2: empty stage-2 arm");
    }
    return active_sum / double(active_count) - placebo_sum / double(placebo_count);
}

// Sort-and-interpolate type-7 quantile, written independently.
inline double naive_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::runtime_error("naive_quantile: empty");
    std::sort(values.begin(), values.end());
    const double position = p * double(values.size() - 1);
    const std::size_t below = std::size_t(position);
    const std::size_t above = std::min(below + 1, values.size() - 1);
    const double weight = position - double(below);
    return (1.0 - weight) * values[below] + weight * values[above];
}

}  // namespace spcd::oracles
