#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cshrink/types.hpp"

namespace cshrink {

// Fitted beta talent curve Beta(K*eta, K*(1-eta)) for one component.
struct RandomEffectsFit {
    double eta = 0.5;
    double K = 1.0;
    double talent_sd = 0.0;
    double log_posterior_at_mode = 0.0;
    bool converged = false;
    bool at_K_bound = false;
    std::size_t n_players = 0;

    // Builds a fit with talent_sd = sqrt(eta (1 - eta) / (K + 1)).
    static RandomEffectsFit from_parameters(double eta, double K);
};

double talent_sd(double eta, double K);

// Unconstrained coordinates: eta = logistic(logit_eta), K = exp(log_K).
struct Theta {
    double logit_eta = 0.0;
    double log_K = 0.0;
};

struct ExchangeableFitOptions {
    double log_K_cap = 15.0;
    double f_tolerance = 1e-8;
    int max_evaluations = 5000;
    int restarts = 3;
    std::uint64_t seed = 0;
};

// log of the beta-binomial mass C(n,y) B(y + K eta, n - y + K(1-eta)) / B(K eta, K(1-eta)).
// n == 0 returns 0.
double log_marginal(Count y, Count n, double eta, double K);

// Sum of log_marginal over observations plus the log of the vague hyperprior
// expressed in (logit eta, log K) coordinates: log K - 2 log(1 + K).
// Observations with n == 0 contribute nothing.
double log_posterior(std::span<const ComponentObservation> observations, Theta theta);

// Analytic gradient of log_posterior with respect to (logit eta, log K).
Theta log_posterior_gradient(std::span<const ComponentObservation> observations, Theta theta);

// Posterior mode of (eta, K). Requires at least two observations with n > 0.
RandomEffectsFit fit_exchangeable(std::span<const ComponentObservation> observations,
                                  const ExchangeableFitOptions& options = {});

// Plug-in posterior mean (y + K eta) / (n + K).
double shrink(Count y, Count n, const RandomEffectsFit& fit);

// Predictive standard deviation of y/n: sqrt(eta (1-eta) (1/n + 1/(K+1))).
double predictive_sd(Count n, const RandomEffectsFit& fit);

// (y/n - eta) / predictive_sd(n).
double standardized_residual(Count y, Count n, const RandomEffectsFit& fit);

struct ShrunkenEstimate {
    std::string player_id;
    Count y = 0;
    Count n = 0;
    double p_hat = 0.0;
};

std::vector<ShrunkenEstimate> shrink_all(std::span<const ComponentObservation> observations,
                                         const RandomEffectsFit& fit);

}  // namespace cshrink
