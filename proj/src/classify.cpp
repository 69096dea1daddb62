#include "spcd/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spcd/errors.hpp"
#include "spcd/trial_model.hpp"

namespace spcd {

ClassifierSpec ClassifierSpec::fixed_change(double c) {
    ClassifierSpec spec;
    spec.kind = ClassifierKind::kFixedThresholdChange;
    spec.c = c;
    spec.p_r = 0.0;
    spec.validate();
    return spec;
}

ClassifierSpec ClassifierSpec::fixed_level(double c) {
    ClassifierSpec spec;
    spec.kind = ClassifierKind::kFixedThresholdLevel;
    spec.c = c;
    spec.p_r = 0.0;
    spec.validate();
    return spec;
}

ClassifierSpec ClassifierSpec::quantile_change(double p_r) {
    ClassifierSpec spec;
    spec.kind = ClassifierKind::kQuantileChange;
    spec.c = 0.0;
    spec.p_r = p_r;
    spec.validate();
    return spec;
}

ClassifierSpec ClassifierSpec::oracle() {
    ClassifierSpec spec;
    spec.kind = ClassifierKind::kOracle;
    spec.c = 0.0;
    spec.p_r = 0.0;
    return spec;
}

std::string ClassifierSpec::name() const {
    switch (kind) {
        case ClassifierKind::kFixedThresholdChange:
            return "fixed-threshold-change";
        case ClassifierKind::kFixedThresholdLevel:
            return "fixed-threshold-level";
        case ClassifierKind::kQuantileChange:
            return "quantile-change";
        case ClassifierKind::kOracle:
            return "oracle";
    }
    return "unknown";
}

void ClassifierSpec::validate() const {
    switch (kind) {
        case ClassifierKind::kFixedThresholdChange:
        case ClassifierKind::kFixedThresholdLevel:
            if (!std::isfinite(c)) {
                throw std::invalid_argument("classifier threshold c must be finite");
            }
            break;
        case ClassifierKind::kQuantileChange:
            if (!(p_r > 0.0 && p_r < 1.0)) {
                throw std::invalid_argument("classifier quantile p_r must lie in (0, 1)");
            }
            break;
        case ClassifierKind::kOracle:
            break;
    }
}

bool classify_fixed(double y0, double y1, double c, ThresholdMode mode) {
    return mode == ThresholdMode::kChange ? (y1 - y0 >= c) : (y1 >= c);
}

double quantile_threshold(const std::vector<double>& placebo_changes, double p_r) {
    if (placebo_changes.empty()) {
        throw std::invalid_argument("quantile_threshold: empty placebo change list");
    }
    std::vector<double> sorted(placebo_changes);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];

    // Type-7: h = (n - 1) p, interpolate between the straddling order stats.
    const double h = static_cast<double>(n - 1) * p_r;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double empirical_npv(const TrialDataset& dataset) {
    std::size_t classified_nr = 0;
    std::size_t true_nr = 0;
    for (const Participant& p : dataset.participants) {
        if (p.a1 || p.r != Responder::kNonResponder) continue;
        ++classified_nr;
        if (!p.l) ++true_nr;
    }
    if (classified_nr == 0) {
        throw NoNonRespondersError("empirical_npv: no classified non-responders");
    }
    return static_cast<double>(true_nr) / static_cast<double>(classified_nr);
}

}  // namespace spcd
