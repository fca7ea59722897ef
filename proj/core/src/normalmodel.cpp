#include "cshrink/normalmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "cshrink/errors.hpp"
#include "cshrink/optimize.hpp"

namespace cshrink {
namespace {

// The zero-between-variance boundary, where everything is closed form:
// mu is the weight-averaged value and sigma2 the weighted mean square.
NormalFit boundary_fit(std::span<const NormalObservation> obs, double min_sigma2) {
    double sw = 0.0, swx = 0.0;
    for (const auto& o : obs) {
        sw += o.weight;
        swx += o.weight * o.value;
    }
    NormalFit fit;
    fit.mu = swx / sw;
    double ss = 0.0;
    for (const auto& o : obs) ss += o.weight * (o.value - fit.mu) * (o.value - fit.mu);
    fit.sigma2 = std::max(ss / static_cast<double>(obs.size()), min_sigma2);
    fit.tau2 = 0.0;
    fit.log_likelihood = normal_log_likelihood(obs, fit.mu, 0.0, fit.sigma2);
    fit.converged = true;
    return fit;
}

// Regress squared deviations on 1/weight: E(x - mu)^2 = tau2 + sigma2 / w.
std::vector<double> moment_start(std::span<const NormalObservation> obs) {
    const double n = static_cast<double>(obs.size());
    double mean = 0.0, mean_w = 0.0;
    for (const auto& o : obs) {
        mean += o.value / n;
        mean_w += o.weight / n;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, total = 0.0;
    for (const auto& o : obs) {
        const double x = 1.0 / o.weight;
        const double y = (o.value - mean) * (o.value - mean);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        total += y;
    }
    const double var = total / std::max(n - 1.0, 1.0);
    const double denom = n * sxx - sx * sx;
    double sigma2 = var * mean_w / 2.0;
    double tau2 = var / 2.0;
    if (denom > 0.0) {
        const double slope = (n * sxy - sx * sy) / denom;
        const double intercept = (sy - slope * sx) / n;
        if (slope > 0.0) sigma2 = slope;
        tau2 = intercept > 0.0 ? intercept : var / 10.0;
    }
    return {mean, std::log(std::max(tau2, 1e-12)), std::log(std::max(sigma2, 1e-12))};
}

}  // namespace

double normal_log_likelihood(std::span<const NormalObservation> obs, double mu, double tau2,
                             double sigma2) {
    double total = 0.0;
    for (const auto& o : obs) {
        const double v = tau2 + sigma2 / o.weight;
        const double d = o.value - mu;
        total -= 0.5 * (std::log(2.0 * std::numbers::pi * v) + d * d / v);
    }
    return total;
}

NormalFit fit_normal_exchangeable(std::span<const NormalObservation> obs,
                                  const NormalFitOptions& options) {
    if (obs.size() < 3)
        throw InsufficientDataError("normal exchangeable fit needs at least 3 observations, got " +
                                    std::to_string(obs.size()));
    for (const auto& o : obs) {
        if (!(o.weight > 0.0)) throw DomainError("normal observation weight must be positive");
        if (!std::isfinite(o.value)) throw DomainError("normal observation value must be finite");
    }

    const NormalFit boundary = boundary_fit(obs, options.min_sigma2);
    const bool all_equal = std::all_of(obs.begin(), obs.end(),
                                       [&](const auto& o) { return o.value == obs[0].value; });
    if (all_equal) {
        NormalFit fit = boundary;
        fit.mu = obs[0].value;
        return fit;
    }

    auto objective = [&](std::span<const double> x) {
        return -normal_log_likelihood(obs, x[0], std::exp(x[1]), std::exp(x[2]));
    };
    NelderMeadOptions nm;
    nm.f_tolerance = options.f_tolerance;
    nm.max_evaluations = options.max_evaluations;

    const auto start = moment_start(obs);
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> jitter(0.0, 1.0);
    NelderMeadResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int run = 0; run <= options.restarts; ++run) {
        auto x0 = start;
        if (run > 0) {
            x0[1] += jitter(rng);
            x0[2] += jitter(rng);
        }
        auto result = nelder_mead(objective, x0, nm);
        if (result.value < best.value) best = std::move(result);
    }
    nm.initial_step = 0.05;
    auto polished = nelder_mead(objective, best.x, nm);
    if (polished.value <= best.value) best = std::move(polished);

    NormalFit fit;
    fit.mu = best.x[0];
    fit.tau2 = std::exp(best.x[1]);
    fit.sigma2 = std::max(std::exp(best.x[2]), options.min_sigma2);
    fit.log_likelihood = -best.value;
    fit.converged = best.converged;

    // The interior search can only approach tau2 = 0 asymptotically; prefer
    // the exact boundary solution when it is at least as good.
    if (boundary.log_likelihood >= fit.log_likelihood - 1e-9) return boundary;
    return fit;
}

double shrink_normal(double value, double weight, const NormalFit& fit) {
    if (!(weight > 0.0)) throw DomainError("shrink_normal: weight must be positive");
    if (fit.tau2 <= 0.0) return fit.mu;
    if (std::isinf(fit.tau2)) return value;
    const double w = weight / fit.sigma2;
    const double u = 1.0 / fit.tau2;
    return (value * w + fit.mu * u) / (w + u);
}

}  // namespace cshrink
