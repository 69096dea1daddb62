#include "spcd/estimators.hpp"

#include <stdexcept>

#include "spcd/errors.hpp"

namespace spcd {

double theta1(const TrialDataset& dataset) {
    double sum_active = 0.0, sum_placebo = 0.0;
    std::size_t n_active = 0, n_placebo = 0;
    for (const Participant& p : dataset.participants) {
        if (p.a1) {
            sum_active += p.stage1_change();
            ++n_active;
        } else {
            sum_placebo += p.stage1_change();
            ++n_placebo;
        }
    }
    if (n_active == 0 || n_placebo == 0) {
        throw EmptyArmError("theta1: empty stage-1 arm");
    }
    return sum_active / static_cast<double>(n_active) -
           sum_placebo / static_cast<double>(n_placebo);
}

double theta2(const TrialDataset& dataset) {
    double sum_active = 0.0, sum_placebo = 0.0;
    std::size_t n_pa = 0, n_pp = 0;
    for (const Participant& p : dataset.participants) {
        if (p.a1 || p.r != Responder::kNonResponder) continue;
        if (p.a2) {
            sum_active += p.stage2_change();
            ++n_pa;
        } else {
            sum_placebo += p.stage2_change();
            ++n_pp;
        }
    }
    if (n_pa == 0 || n_pp == 0) {
        throw EmptyStage2ArmError("theta2: empty stage-2 arm among classified non-responders");
    }
    return sum_active / static_cast<double>(n_pa) - sum_placebo / static_cast<double>(n_pp);
}

double theta_weighted(double theta1, double theta2, double w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::invalid_argument("theta_weighted: w must lie in [0, 1]");
    }
    return w * theta1 + (1.0 - w) * theta2;
}

EstimateSet estimate_all(const TrialDataset& dataset) {
    EstimateSet est{};
    for (const Participant& p : dataset.participants) {
        if (p.a1) {
            ++est.n_a;
            continue;
        }
        ++est.n_p;
        if (p.r == Responder::kResponder) {
            ++est.n_pr;
        } else {
            ++est.n_nr;
            if (p.a2) ++est.n_pa; else ++est.n_pp;
        }
    }
    est.w = dataset.params.weight_w;
    est.theta1 = theta1(dataset);
    est.theta2 = theta2(dataset);
    est.theta_w = theta_weighted(est.theta1, est.theta2, est.w);
    return est;
}

}  // namespace spcd
