#include "spcd/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spcd/errors.hpp"
#include "spcd/normal.hpp"

namespace spcd {

namespace {
constexpr double kResidualTol = 1e-12;
constexpr int kMaxBisect = 400;
}  // namespace

double placebo_change_cdf(const TrialParams& params, double d) {
    const double s = params.sigma_eps;
    return (1.0 - params.p_l) * normal_cdf(d / s) +
           params.p_l * normal_cdf((d - params.delta_placebo) / s);
}

double population_threshold(const TrialParams& params) {
    params.validate();
    const double p_r = params.responder_quantile;
    const double s = params.sigma_eps;

    double lo = std::min(0.0, params.delta_placebo) - 10.0 * s;
    double hi = std::max(0.0, params.delta_placebo) + 10.0 * s;
    while (placebo_change_cdf(params, lo) > p_r) lo -= 10.0 * s;
    while (placebo_change_cdf(params, hi) < p_r) hi += 10.0 * s;

    for (int i = 0; i < kMaxBisect; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f = placebo_change_cdf(params, mid);
        if (std::abs(f - p_r) <= kResidualTol) return mid;
        if (f < p_r) lo = mid; else hi = mid;
    }
    const double mid = 0.5 * (lo + hi);
    if (std::abs(placebo_change_cdf(params, mid) - p_r) <= kResidualTol) return mid;
    throw NonConvergenceError("population_threshold: bisection residual above 1e-12");
}

MisclassProbs misclass_q1(const TrialParams& params) {
    const double q = population_threshold(params);
    const double s = params.sigma_eps;
    const double mass_nr = placebo_change_cdf(params, q);  // P(R = 0), equals p_r
    const double q1 = params.p_l * normal_cdf((q - params.delta_placebo) / s) / mass_nr;
    return {q1, 1.0 - q1};
}

AnalyticCell expected_estimates(const TrialParams& params, const ClassifierSpec& classifier) {
    params.validate();
    AnalyticCell cell{};
    switch (classifier.kind) {
        case ClassifierKind::kOracle:
            cell.q1 = 0.0;
            cell.npv = 1.0;
            cell.threshold_c = std::numeric_limits<double>::quiet_NaN();
            break;
        case ClassifierKind::kQuantileChange: {
            // Use the classifier's quantile level, matching what
            // simulate_trial runs with this spec.
            TrialParams cell_params = params;
            cell_params.responder_quantile = classifier.p_r;
            const MisclassProbs mc = misclass_q1(cell_params);
            cell.q1 = mc.q1;
            cell.npv = mc.npv;
            cell.threshold_c = population_threshold(cell_params);
            break;
        }
        default:
            throw std::invalid_argument("expected_estimates: no closed form for classifier kind " +
                                        classifier.name());
    }
    const double w = params.weight_w;
    cell.e_theta1 = params.delta_all();
    cell.e_theta2 = params.delta_nr - cell.q1 * params.delta_placebo;
    cell.e_theta_w =
        params.delta_nr - params.delta_placebo * (w * params.p_l + (1.0 - w) * cell.q1);
    return cell;
}

std::string to_string(BiasTarget target) {
    switch (target) {
        case BiasTarget::kDeltaAll: return "delta_all";
        case BiasTarget::kDeltaNr: return "delta_nr";
        case BiasTarget::kBoth: return "both";
        case BiasTarget::kNeither: return "neither";
    }
    return "unknown";
}

UnbiasednessReport unbiasedness_conditions(const TrialParams& params,
                                           const ClassifierSpec& classifier, double w) {
    params.validate();
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::invalid_argument("unbiasedness_conditions: w must lie in [0, 1]");
    }

    UnbiasednessReport report{};
    report.no_responders = params.p_l == 0.0;
    report.no_placebo_effect = params.delta_placebo == 0.0;
    // Threshold rules look only at Y1 - Y0 = delta_placebo * L + eps, so they
    // are independent of L exactly when the placebo effect vanishes. The
    // oracle is L itself.
    report.classifier_independent_of_l =
        report.no_placebo_effect && classifier.kind != ClassifierKind::kOracle;
    report.weight_is_one = w == 1.0;

    if (classifier.kind == ClassifierKind::kOracle || report.no_responders) {
        report.q1 = 0.0;
    } else if (classifier.kind == ClassifierKind::kQuantileChange) {
        TrialParams quantile_params = params;
        quantile_params.responder_quantile = classifier.p_r;
        report.q1 = misclass_q1(quantile_params).q1;
    } else {
        report.q1 = std::numeric_limits<double>::quiet_NaN();
    }
    report.weight_zero_perfect_npv = w == 0.0 && report.q1 == 0.0;

    if (report.no_responders || report.no_placebo_effect) {
        report.target = BiasTarget::kBoth;  // estimands coincide
    } else if (report.weight_is_one || report.classifier_independent_of_l) {
        report.target = BiasTarget::kDeltaAll;
    } else if (report.weight_zero_perfect_npv) {
        report.target = BiasTarget::kDeltaNr;
    } else {
        report.target = BiasTarget::kNeither;
    }
    return report;
}

}  // namespace spcd
