#pragma once

// Two-component equal-variance normal mixture fitted by EM, the model-based
// route to the placebo-arm decomposition: recovers (p_L, mu0, mu1, sigma)
// from placebo-arm change scores.

#include <cstddef>
#include <vector>

namespace spcd {

struct InitSpec {
    enum class Kind {
        kMedianSplit,  // split at the sample median; deterministic default
        kExplicit,
    };
    Kind kind = Kind::kMedianSplit;
    double p = 0.5;  // explicit initialization only
    double mu0 = 0.0;
    double mu1 = 0.0;
    double sigma = 1.0;

    static InitSpec median_split() { return {}; }
    static InitSpec explicit_init(double p, double mu0, double mu1, double sigma);
};

struct MixtureFit {
    double p_hat;      // estimated responder prevalence (upper component)
    double mu0;        // lower component mean, mu0 <= mu1 enforced
    double mu1;        // upper component mean
    double sigma_hat;  // shared component SD
    double loglik;
    std::size_t iterations;
    bool converged;
    std::vector<double> loglik_trace;  // one entry per iteration
};

constexpr double kEmDefaultTol = 1e-8;
constexpr std::size_t kEmDefaultMaxIter = 500;
constexpr double kSigmaFloor = 1e-8;

// Fit the mixture. Requires >= 4 observations. The log-likelihood is
// nondecreasing across iterations; components are reordered so mu0 <= mu1.
// Throws DegenerateFitError when the shared SD collapses to the floor and
// InsufficientDataError on too little data.
MixtureFit em_fit(const std::vector<double>& changes, const InitSpec& init = InitSpec::median_split(),
                  double tol = kEmDefaultTol, std::size_t max_iter = kEmDefaultMaxIter);

// P(L = 1 | D = d) under the fitted mixture (Bayes rule, upper component).
double posterior_responsibility(const MixtureFit& fit, double d);

struct IdentifiabilityReport {
    double separation;        // (mu1 - mu0) / sigma_hat
    double boundary_distance; // min(p_hat, 1 - p_hat)
    bool weak;                // separation < 1 or p_hat outside [0.05, 0.95]
};

IdentifiabilityReport identifiability_diagnostics(const MixtureFit& fit);

}  // namespace spcd
