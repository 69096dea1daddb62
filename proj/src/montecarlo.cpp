#include "spcd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "spcd/errors.hpp"
#include "spcd/estimators.hpp"
#include "spcd/rng.hpp"

namespace spcd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Kahan-compensated accumulator; aggregation must not depend on how the
// replicate loop was scheduled.
class KahanSum {
public:
    void add(double value) {
        const double y = value - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

struct ReplicateResult {
    double theta1 = kNaN;
    double theta2 = kNaN;
    double theta_w = kNaN;
    double npv = kNaN;
    bool skipped = true;
};

// mean / SE over the non-skipped replicates in index order.
struct Moments {
    double mean;
    double se;
};

Moments summarize(const std::vector<ReplicateResult>& results, double ReplicateResult::* field) {
    KahanSum sum;
    std::size_t used = 0;
    for (const ReplicateResult& r : results) {
        if (r.skipped) continue;
        sum.add(r.*field);
        ++used;
    }
    if (used == 0) return {kNaN, kNaN};
    const double mean = sum.value() / static_cast<double>(used);
    if (used < 2) return {mean, kNaN};
    KahanSum sq;
    for (const ReplicateResult& r : results) {
        if (r.skipped) continue;
        const double d = r.*field - mean;
        sq.add(d * d);
    }
    const double sd = std::sqrt(sq.value() / static_cast<double>(used - 1));
    return {mean, sd / std::sqrt(static_cast<double>(used))};
}

EstimatorSummary make_summary(const Moments& m, double delta_all, double delta_nr) {
    return {m.mean, m.se, m.mean - delta_all, m.mean - delta_nr};
}

AnalyticCell analytic_or_nan(const TrialParams& params, const ClassifierSpec& classifier) {
    switch (classifier.kind) {
        case ClassifierKind::kQuantileChange:
        case ClassifierKind::kOracle:
            return expected_estimates(params, classifier);
        default:
            return {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    }
}

}  // namespace

void GridSpec::validate() const {
    base.validate();
    if (n_reps < 1) throw std::invalid_argument("GridSpec: n_reps must be >= 1");
    if (delta_placebo_values.empty()) {
        throw std::invalid_argument("GridSpec: delta_placebo_values must be non-empty");
    }
    if (sigma_values.empty()) {
        throw std::invalid_argument("GridSpec: sigma_values must be non-empty");
    }
    if (classifiers.empty()) {
        throw std::invalid_argument("GridSpec: classifiers must be non-empty");
    }
    for (const ClassifierSpec& c : classifiers) c.validate();
    for (double s : sigma_values) {
        if (!(s > 0.0)) throw std::invalid_argument("GridSpec: sigma values must be positive");
    }
    for (double dp : delta_placebo_values) {
        cell_params(dp, sigma_values.front()).validate();
    }
}

GridSpec GridSpec::canonical() const {
    GridSpec spec = *this;
    auto sort_unique = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    sort_unique(spec.delta_placebo_values);
    sort_unique(spec.sigma_values);
    std::sort(spec.classifiers.begin(), spec.classifiers.end(),
              [](const ClassifierSpec& a, const ClassifierSpec& b) {
                  if (a.name() != b.name()) return a.name() < b.name();
                  return a.c != b.c ? a.c < b.c : a.p_r < b.p_r;
              });
    return spec;
}

TrialParams GridSpec::cell_params(double delta_placebo, double sigma_eps) const {
    TrialParams params = base;
    params.delta_placebo = delta_placebo;
    params.sigma_eps = sigma_eps;
    params.delta_nr = delta_all + params.p_l * delta_placebo;
    return params;
}

CellSummary run_cell(const TrialParams& params, const ClassifierSpec& classifier,
                     std::size_t n_reps, std::uint64_t cell_seed, unsigned parallelism) {
    params.validate();
    classifier.validate();
    if (n_reps < 1) throw std::invalid_argument("run_cell: n_reps must be >= 1");
    // Surface stage-1 allocation failures before any worker starts; they do
    // not depend on the seed.
    const auto n_active =
        static_cast<std::size_t>(static_cast<double>(params.n) * params.active_frac_stage1);
    if (n_active == 0 || n_active >= params.n) {
        throw EmptyArmError("run_cell: stage-1 allocation leaves an arm empty");
    }

    std::vector<ReplicateResult> results(n_reps);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const std::uint64_t seed = rng::derive_seed(cell_seed, rng::kStreamReplicate, r);
            const TrialDataset ds = simulate_trial(params, seed, classifier);
            ReplicateResult& out = results[r];
            try {
                const EstimateSet est = estimate_all(ds);
                out.theta1 = est.theta1;
                out.theta2 = est.theta2;
                out.theta_w = est.theta_w;
                out.npv = empirical_npv(ds);
                out.skipped = false;
            } catch (const EmptyStage2ArmError&) {
            } catch (const NoNonRespondersError&) {
            }
        }
    };

    const unsigned workers = std::max(1u, parallelism);
    if (workers == 1 || n_reps < 2) {
        run_range(0, n_reps);
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (n_reps + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            const std::size_t begin = static_cast<std::size_t>(t) * chunk;
            if (begin >= n_reps) break;
            threads.emplace_back(run_range, begin, std::min(begin + chunk, n_reps));
        }
        for (std::thread& t : threads) t.join();
    }

    const EstimandSet truth = true_estimands(params);
    CellSummary cell{};
    cell.delta_placebo = params.delta_placebo;
    cell.sigma_eps = params.sigma_eps;
    cell.classifier = classifier;
    cell.n_reps = n_reps;
    cell.skipped = static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(),
                      [](const ReplicateResult& r) { return r.skipped; }));
    cell.used = n_reps - cell.skipped;
    cell.theta1 = make_summary(summarize(results, &ReplicateResult::theta1), truth.delta_all,
                               truth.delta_nr);
    cell.theta2 = make_summary(summarize(results, &ReplicateResult::theta2), truth.delta_all,
                               truth.delta_nr);
    cell.theta_w = make_summary(summarize(results, &ReplicateResult::theta_w), truth.delta_all,
                                truth.delta_nr);
    const Moments npv = summarize(results, &ReplicateResult::npv);
    cell.npv_mean = npv.mean;
    cell.npv_se = npv.se;
    cell.analytic = analytic_or_nan(params, classifier);
    return cell;
}

std::vector<CellSummary> run_grid(const GridSpec& spec, unsigned parallelism) {
    spec.validate();
    const GridSpec grid = spec.canonical();

    std::vector<CellSummary> cells;
    std::uint64_t cell_index = 0;
    for (double dp : grid.delta_placebo_values) {
        for (double sigma : grid.sigma_values) {
            const TrialParams params = grid.cell_params(dp, sigma);
            for (const ClassifierSpec& classifier : grid.classifiers) {
                const std::uint64_t cell_seed =
                    rng::derive_seed(grid.master_seed, rng::kStreamCell, cell_index++);
                cells.push_back(
                    run_cell(params, classifier, grid.n_reps, cell_seed, parallelism));
            }
        }
    }
    return cells;
}

}  // namespace spcd
