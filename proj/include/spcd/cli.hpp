#pragma once

// Subcommand implementations behind the spcd CLI. Kept as library functions
// so tests can exercise them without spawning processes. All CSV output is
// deterministic byte-for-byte given (config, seed): LF newlines, period
// decimal separator, shortest round-trip floats.

#include <iosfwd>
#include <string>

#include "spcd/config.hpp"
#include "spcd/mixture_em.hpp"

namespace spcd::cli {

// Participant-level CSV: one `# ...` header line recording the seed and
// parameters, then one `id,y0,l,a1,y1,r,a2,y2` row per participant
// (r empty on the active arm).
std::string simulate_csv(const RunConfig& config);
void cmd_simulate(const RunConfig& config);  // writes config.out

// Grid CSV, header row then one row per (cell, estimator), sorted by
// (delta_placebo, sigma_eps, classifier, estimator). Columns:
// delta_placebo,sigma_eps,classifier,estimator,mean,se,bias_all,bias_nr,
// npv_mean,npv_se,q1_analytic,e_analytic,skipped
std::string grid_csv(const RunConfig& config);
void cmd_grid(const RunConfig& config);

// Analytic table for the quantile-change classifier over the grid. Columns:
// delta_placebo,sigma_eps,q1,npv,e_theta1,e_theta2,e_theta_w,threshold_c
std::string analytic_csv(const RunConfig& config);
void cmd_analytic(const RunConfig& config);

// Exit codes for cmd_emfit.
enum EmfitStatus : int {
    kEmfitOk = 0,
    kEmfitWeak = 2,
    kEmfitDegenerate = 3,
    kEmfitNotConverged = 4,
};

struct EmfitOptions {
    std::string column = "change";
    double tol = kEmDefaultTol;
    std::size_t max_iter = kEmDefaultMaxIter;
};

// Fit the placebo-change mixture from a CSV column and print the fit report.
int cmd_emfit(const std::string& input_path, const EmfitOptions& options, std::ostream& out);

// Monte-Carlo-vs-analytic consistency report over the configured grid.
// `slack` absorbs the empirical-vs-population threshold gap (default 0.02;
// oracle cells get half). Returns 0 iff every cell check passes.
int cmd_check(const RunConfig& config, double slack, std::ostream& out);

}  // namespace spcd::cli
