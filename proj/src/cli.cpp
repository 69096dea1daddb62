#include "spcd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "spcd/csv.hpp"
#include "spcd/errors.hpp"
#include "spcd/estimators.hpp"
#include "spcd/montecarlo.hpp"

namespace spcd::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
    if (path.empty()) {
        throw ConfigError("config key 'out' (or --out) is required for this command");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

std::string params_header(const RunConfig& config) {
    const TrialParams& p = config.trial;
    std::string line = "# spcd simulate seed=" + format_u64(config.seed);
    line += " n=" + format_u64(p.n);
    line += " delta_nr=" + format_double(p.delta_nr);
    line += " delta_placebo=" + format_double(p.delta_placebo);
    line += " sigma_eps=" + format_double(p.sigma_eps);
    line += " p_l=" + format_double(p.p_l);
    line += " active_frac_stage1=" + format_double(p.active_frac_stage1);
    line += " active_frac_stage2=" + format_double(p.active_frac_stage2);
    line += " responder_quantile=" + format_double(p.responder_quantile);
    line += " weight_w=" + format_double(p.weight_w);
    line += " classifier=" + config.classifier.name();
    return line;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    CsvTable table;
    std::string line;
    auto split = [](const std::string& text) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream stream(text);
        while (std::getline(stream, field, ',')) fields.push_back(field);
        if (!text.empty() && text.back() == ',') fields.emplace_back();
        return fields;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (table.header.empty()) {
            table.header = split(line);
        } else {
            table.rows.push_back(split(line));
        }
    }
    return table;
}

}  // namespace

std::string simulate_csv(const RunConfig& config) {
    config.validate();
    const TrialDataset ds = simulate_trial(config.trial, config.seed, config.classifier);
    std::string out = params_header(config) + "\n";
    for (std::size_t i = 0; i < ds.participants.size(); ++i) {
        const Participant& p = ds.participants[i];
        out += format_u64(i);
        out += ',' + format_double(p.y0);
        out += ',' + std::string(p.l ? "1" : "0");
        out += ',' + std::string(p.a1 ? "1" : "0");
        out += ',' + format_double(p.y1);
        out += ',';
        if (p.r != Responder::kNotApplicable) {
            out += p.r == Responder::kResponder ? "1" : "0";
        }
        out += ',' + std::string(p.a2 ? "1" : "0");
        out += ',' + format_double(p.y2);
        out += '\n';
    }
    return out;
}

void cmd_simulate(const RunConfig& config) { write_file(config.out, simulate_csv(config)); }

std::string grid_csv(const RunConfig& config) {
    config.validate();
    GridSpec spec = config.grid;
    spec.base = config.trial;
    spec.master_seed = config.seed;
    const std::vector<CellSummary> cells = run_grid(spec, config.parallelism);

    std::string out =
        "delta_placebo,sigma_eps,classifier,estimator,mean,se,bias_all,bias_nr,"
        "npv_mean,npv_se,q1_analytic,e_analytic,skipped\n";
    for (const CellSummary& cell : cells) {
        const auto emit = [&](const char* estimator, const EstimatorSummary& s,
                              double e_analytic) {
            out += format_double(cell.delta_placebo);
            out += ',' + format_double(cell.sigma_eps);
            out += ',' + cell.classifier.name();
            out += ',' + std::string(estimator);
            out += ',' + format_double(s.mean);
            out += ',' + format_double(s.se);
            out += ',' + format_double(s.bias_all);
            out += ',' + format_double(s.bias_nr);
            out += ',' + format_double(cell.npv_mean);
            out += ',' + format_double(cell.npv_se);
            out += ',' + format_double(cell.analytic.q1);
            out += ',' + format_double(e_analytic);
            out += ',' + format_u64(cell.skipped);
            out += '\n';
        };
        emit("theta1", cell.theta1, cell.analytic.e_theta1);
        emit("theta2", cell.theta2, cell.analytic.e_theta2);
        emit("theta_w", cell.theta_w, cell.analytic.e_theta_w);
    }
    return out;
}

void cmd_grid(const RunConfig& config) { write_file(config.out, grid_csv(config)); }

std::string analytic_csv(const RunConfig& config) {
    config.validate();
    GridSpec spec = config.grid;
    spec.base = config.trial;
    const GridSpec grid = spec.canonical();
    const ClassifierSpec classifier =
        ClassifierSpec::quantile_change(config.trial.responder_quantile);

    std::string out = "delta_placebo,sigma_eps,q1,npv,e_theta1,e_theta2,e_theta_w,threshold_c\n";
    for (double dp : grid.delta_placebo_values) {
        for (double sigma : grid.sigma_values) {
            const TrialParams params = grid.cell_params(dp, sigma);
            const AnalyticCell cell = expected_estimates(params, classifier);
            out += format_double(dp);
            out += ',' + format_double(sigma);
            out += ',' + format_double(cell.q1);
            out += ',' + format_double(cell.npv);
            out += ',' + format_double(cell.e_theta1);
            out += ',' + format_double(cell.e_theta2);
            out += ',' + format_double(cell.e_theta_w);
            out += ',' + format_double(cell.threshold_c);
            out += '\n';
        }
    }
    return out;
}

void cmd_analytic(const RunConfig& config) { write_file(config.out, analytic_csv(config)); }

int cmd_emfit(const std::string& input_path, const EmfitOptions& options, std::ostream& out) {
    const CsvTable table = read_csv(input_path);
    if (table.header.empty()) {
        throw std::runtime_error("emfit: input file '" + input_path + "' has no header row");
    }
    const auto column_it =
        std::find(table.header.begin(), table.header.end(), options.column);
    if (column_it == table.header.end()) {
        throw std::runtime_error("emfit: column '" + options.column + "' not found in '" +
                                 input_path + "'");
    }
    const std::size_t column = static_cast<std::size_t>(column_it - table.header.begin());

    std::vector<double> changes;
    changes.reserve(table.rows.size());
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        if (column >= table.rows[row].size()) {
            throw std::runtime_error("emfit: row " + std::to_string(row + 1) +
                                     " has too few fields");
        }
        try {
            changes.push_back(std::stod(table.rows[row][column]));
        } catch (const std::exception&) {
            throw std::runtime_error("emfit: non-numeric value '" + table.rows[row][column] +
                                     "' in column '" + options.column + "', row " +
                                     std::to_string(row + 1));
        }
    }

    MixtureFit fit;
    try {
        fit = em_fit(changes, InitSpec::median_split(), options.tol, options.max_iter);
    } catch (const DegenerateFitError& e) {
        out << "degenerate fit: " << e.what() << "\n";
        return kEmfitDegenerate;
    }
    const IdentifiabilityReport diag = identifiability_diagnostics(fit);

    out << "n=" << changes.size() << "\n";
    out << "p_hat=" << format_double(fit.p_hat) << "\n";
    out << "mu0=" << format_double(fit.mu0) << "\n";
    out << "mu1=" << format_double(fit.mu1) << "\n";
    out << "sigma_hat=" << format_double(fit.sigma_hat) << "\n";
    out << "loglik=" << format_double(fit.loglik) << "\n";
    out << "iterations=" << fit.iterations << "\n";
    out << "converged=" << (fit.converged ? "yes" : "no") << "\n";
    out << "separation=" << format_double(diag.separation) << "\n";
    out << "weakly_identified=" << (diag.weak ? "yes" : "no") << "\n";

    // A weak fit is the more informative verdict than a non-converged one:
    // flat-likelihood data often exhausts the iteration budget as well.
    if (diag.weak) return kEmfitWeak;
    if (!fit.converged) return kEmfitNotConverged;
    return kEmfitOk;
}

int cmd_check(const RunConfig& config, double slack, std::ostream& out) {
    config.validate();
    GridSpec spec = config.grid;
    spec.base = config.trial;
    spec.master_seed = config.seed;
    const std::vector<CellSummary> cells = run_grid(spec, config.parallelism);

    std::size_t passed = 0;
    std::size_t failed = 0;
    for (const CellSummary& cell : cells) {
        const std::string where = "delta_placebo=" + format_double(cell.delta_placebo) +
                                  " sigma_eps=" + format_double(cell.sigma_eps) +
                                  " classifier=" + cell.classifier.name();
        const bool oracle = cell.classifier.kind == ClassifierKind::kOracle;
        // Oracle cells have no quantile-estimation gap, so they get half the slack.
        const double cell_slack = oracle ? 0.5 * slack : slack;

        const auto report = [&](const char* check, double diff, double tol) {
            const bool ok = diff <= tol;
            out << (ok ? "PASS" : "FAIL") << ' ' << where << " check=" << check
                << " |diff|=" << format_double(diff) << " tol=" << format_double(tol) << "\n";
            (ok ? passed : failed) += 1;
        };

        report("theta1_vs_delta_all", std::abs(cell.theta1.bias_all),
               std::max(slack, 4.0 * cell.theta1.se));
        if (std::isfinite(cell.analytic.e_theta2)) {
            report("theta2_vs_analytic", std::abs(cell.theta2.mean - cell.analytic.e_theta2),
                   4.0 * cell.theta2.se + cell_slack);
            report("theta_w_vs_analytic", std::abs(cell.theta_w.mean - cell.analytic.e_theta_w),
                   4.0 * cell.theta_w.se + cell_slack);
            report("npv_vs_analytic", std::abs(cell.npv_mean - cell.analytic.npv), slack);
        }
    }
    out << "cmd_check: " << passed << " passed, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace spcd::cli
