#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace cshrink {

// Observed constant-free FIP for one pitcher, weighted by innings pitched.
struct NormalObservation {
    std::string player_id;
    double value = 0.0;
    double weight = 1.0;
};

// value_j ~ Normal(mu, tau2 + sigma2 / weight_j).
struct NormalFit {
    double mu = 0.0;
    double tau2 = 0.0;
    double sigma2 = 1.0;
    double log_likelihood = 0.0;
    bool converged = false;
};

struct NormalFitOptions {
    double f_tolerance = 1e-10;
    int max_evaluations = 5000;
    int restarts = 3;
    std::uint64_t seed = 0;
    // Lower bound applied to sigma2 when the data carry no within-player spread.
    double min_sigma2 = 1e-12;
};

// Marginal log-likelihood of the normal exchangeable model.
double normal_log_likelihood(std::span<const NormalObservation> obs, double mu, double tau2,
                             double sigma2);

// Marginal maximum-likelihood estimate of (mu, tau2, sigma2). Requires at
// least three observations with positive weight.
NormalFit fit_normal_exchangeable(std::span<const NormalObservation> obs,
                                  const NormalFitOptions& options = {});

// Posterior mean of a pitcher's ability: precision-weighted average of the
// observed value and mu.
double shrink_normal(double value, double weight, const NormalFit& fit);

}  // namespace cshrink
