#pragma once

// Placebo-response classification rules C_R(y0, y1).
//
// Every threshold rule is inclusive at the boundary: R = I(y1 - y0 >= c) or
// R = I(y1 >= c). The same convention is used by the analytic module, so the
// classifier and the closed-form misclassification probabilities agree on
// boundary points.

#include <cstddef>
#include <string>
#include <vector>

namespace spcd {

struct TrialDataset;  // trial_model.hpp

enum class ClassifierKind {
    kFixedThresholdChange,  // R = 1 iff y1 - y0 >= c
    kFixedThresholdLevel,   // R = 1 iff y1 >= c
    kQuantileChange,        // R = 1 iff y1 - y0 >= empirical p_r quantile of placebo changes
    kOracle,                // R = L
};

// A classification rule plus its single parameter. Exactly one of c / p_r is
// meaningful depending on the kind; the factories below enforce that.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::kQuantileChange;
    double c = 0.0;    // threshold, fixed kinds only
    double p_r = 0.5;  // quantile level, quantile kind only

    static ClassifierSpec fixed_change(double c);
    static ClassifierSpec fixed_level(double c);
    static ClassifierSpec quantile_change(double p_r);
    static ClassifierSpec oracle();

    // Canonical name used in CSV output and config files.
    std::string name() const;

    void validate() const;

    bool operator==(const ClassifierSpec&) const = default;
};

enum class ThresholdMode { kChange, kLevel };

// Fixed-threshold rule; inclusive boundary.
bool classify_fixed(double y0, double y1, double c, ThresholdMode mode);

// Empirical p_r quantile of the placebo-arm changes, type-7 definition
// (linear interpolation between order statistics). Errors on an empty list.
double quantile_threshold(const std::vector<double>& placebo_changes, double p_r);

// The oracle reveals the latent status.
inline bool oracle_classify(bool l) { return l; }

// P(L = 0 | R = 0) among classified non-responders of one dataset.
// Throws NoNonRespondersError when nobody was classified R = 0.
double empirical_npv(const TrialDataset& dataset);

}  // namespace spcd
