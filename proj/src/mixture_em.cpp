#include "spcd/mixture_em.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "spcd/errors.hpp"

namespace spcd {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double log_normal_density(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return -0.5 * z * z - std::log(sigma) - 0.5 * kLog2Pi;
}

// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

struct State {
    double p;
    double mu0;
    double mu1;
    double sigma;
};

State median_split_init(const std::vector<double>& data) {
    std::vector<double> sorted(data);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const std::size_t half = n / 2;

    double sum0 = 0.0, sum1 = 0.0;
    for (std::size_t i = 0; i < half; ++i) sum0 += sorted[i];
    for (std::size_t i = half; i < n; ++i) sum1 += sorted[i];
    State s;
    s.p = 0.5;
    s.mu0 = sum0 / static_cast<double>(half);
    s.mu1 = sum1 / static_cast<double>(n - half);

    double ss = 0.0;
    for (std::size_t i = 0; i < half; ++i) ss += (sorted[i] - s.mu0) * (sorted[i] - s.mu0);
    for (std::size_t i = half; i < n; ++i) ss += (sorted[i] - s.mu1) * (sorted[i] - s.mu1);
    s.sigma = std::sqrt(ss / static_cast<double>(n));
    return s;
}

}  // namespace

InitSpec InitSpec::explicit_init(double p, double mu0, double mu1, double sigma) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("InitSpec: p must lie in (0, 1)");
    if (!(sigma > 0.0)) throw std::invalid_argument("InitSpec: sigma must be positive");
    InitSpec spec;
    spec.kind = Kind::kExplicit;
    spec.p = p;
    spec.mu0 = mu0;
    spec.mu1 = mu1;
    spec.sigma = sigma;
    return spec;
}

MixtureFit em_fit(const std::vector<double>& changes, const InitSpec& init, double tol,
                  std::size_t max_iter) {
    if (changes.size() < 4) {
        throw InsufficientDataError("em_fit: need at least 4 observations, got " +
                                    std::to_string(changes.size()));
    }
    if (!(tol > 0.0)) throw std::invalid_argument("em_fit: tol must be positive");

    const std::size_t n = changes.size();
    State s = init.kind == InitSpec::Kind::kExplicit
                  ? State{init.p, init.mu0, init.mu1, init.sigma}
                  : median_split_init(changes);
    if (s.sigma < kSigmaFloor) {
        throw DegenerateFitError("em_fit: data has (near-)zero spread at initialization");
    }

    MixtureFit fit{};
    std::vector<double> resp(n);  // P(upper component | x_i)
    double prev_loglik = -std::numeric_limits<double>::infinity();

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        // E step.
        double loglik = 0.0;
        const double log_p1 = std::log(s.p);
        const double log_p0 = std::log1p(-s.p);
        for (std::size_t i = 0; i < n; ++i) {
            const double l1 = log_p1 + log_normal_density(changes[i], s.mu1, s.sigma);
            const double l0 = log_p0 + log_normal_density(changes[i], s.mu0, s.sigma);
            const double norm = log_add(l0, l1);
            resp[i] = std::exp(l1 - norm);
            loglik += norm;
        }
        fit.loglik_trace.push_back(loglik);
        fit.iterations = iter;

        // M step.
        double w1 = 0.0, w1x = 0.0, w0x = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w1 += resp[i];
            w1x += resp[i] * changes[i];
            w0x += (1.0 - resp[i]) * changes[i];
        }
        const double w0 = static_cast<double>(n) - w1;
        s.p = std::clamp(w1 / static_cast<double>(n), 1e-12, 1.0 - 1e-12);
        if (w1 > 0.0) s.mu1 = w1x / w1;
        if (w0 > 0.0) s.mu0 = w0x / w0;
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d1 = changes[i] - s.mu1;
            const double d0 = changes[i] - s.mu0;
            ss += resp[i] * d1 * d1 + (1.0 - resp[i]) * d0 * d0;
        }
        s.sigma = std::sqrt(ss / static_cast<double>(n));
        if (s.sigma < kSigmaFloor) {
            throw DegenerateFitError("em_fit: shared component SD collapsed below " +
                                     std::to_string(kSigmaFloor));
        }

        if (loglik - prev_loglik < tol && iter > 1) {
            fit.converged = true;
            break;
        }
        prev_loglik = loglik;
    }

    // Upper component is the responder one.
    if (s.mu0 > s.mu1) {
        std::swap(s.mu0, s.mu1);
        s.p = 1.0 - s.p;
    }
    fit.p_hat = s.p;
    fit.mu0 = s.mu0;
    fit.mu1 = s.mu1;
    fit.sigma_hat = s.sigma;
    fit.loglik = fit.loglik_trace.back();
    return fit;
}

double posterior_responsibility(const MixtureFit& fit, double d) {
    const double l1 = std::log(fit.p_hat) + log_normal_density(d, fit.mu1, fit.sigma_hat);
    const double l0 = std::log1p(-fit.p_hat) + log_normal_density(d, fit.mu0, fit.sigma_hat);
    return std::exp(l1 - log_add(l0, l1));
}

IdentifiabilityReport identifiability_diagnostics(const MixtureFit& fit) {
    IdentifiabilityReport report{};
    report.separation = (fit.mu1 - fit.mu0) / fit.sigma_hat;
    report.boundary_distance = std::min(fit.p_hat, 1.0 - fit.p_hat);
    report.weak = report.separation < 1.0 || fit.p_hat < 0.05 || fit.p_hat > 0.95;
    return report;
}

}  // namespace spcd
