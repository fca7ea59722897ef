#include "cshrink/betabin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cshrink/errors.hpp"
#include "cshrink/optimize.hpp"
#include "cshrink/special.hpp"

namespace cshrink {
namespace {

using special::digamma;
using special::log_gamma;

constexpr double kLogitBound = 40.0;

double logistic(double t) {
    return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

// log(1 + exp(t)) without overflow.
double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double log_hyperprior(double log_K) { return log_K - 2.0 * softplus(log_K); }

void check_counts(Count y, Count n) {
    if (n < 0 || y < 0 || y > n) throw DomainError("beta-binomial: need 0 <= y <= n");
}

// Beta-binomial log mass without the binomial coefficient, with the terms
// that only depend on (eta, K) precomputed.
struct MarginalKernel {
    double a, b, K, log_norm;

    MarginalKernel(double eta, double one_minus_eta, double k)
        : a(k * eta),
          b(k * one_minus_eta),
          K(k),
          log_norm(log_gamma(a) + log_gamma(b) - log_gamma(k)) {}

    double operator()(Count y, Count n) const {
        const auto yd = static_cast<double>(y);
        const auto nd = static_cast<double>(n);
        return log_gamma(yd + a) + log_gamma(nd - yd + b) - log_gamma(nd + K) - log_norm;
    }
};

std::vector<ComponentObservation> effective(std::span<const ComponentObservation> observations) {
    std::vector<ComponentObservation> out;
    for (const auto& o : observations) {
        check_counts(o.successes, o.opportunities);
        if (o.opportunities > 0) out.push_back(o);
    }
    return out;
}

double sum_log_choose(std::span<const ComponentObservation> observations) {
    double total = 0.0;
    for (const auto& o : observations)
        total += special::log_choose(static_cast<double>(o.opportunities),
                                     static_cast<double>(o.successes));
    return total;
}

double kernel_sum(std::span<const ComponentObservation> observations, Theta theta) {
    const MarginalKernel kernel(logistic(theta.logit_eta), logistic(-theta.logit_eta),
                                std::exp(theta.log_K));
    double total = 0.0;
    for (const auto& o : observations) total += kernel(o.successes, o.opportunities);
    return total;
}

// Method-of-moments start: pooled rate for eta; K from matching the spread of
// observed rates to eta (1 - eta) (1/n_bar + 1/(K + 1)).
Theta moment_start(std::span<const ComponentObservation> obs, double log_K_cap) {
    double sum_y = 0.0, sum_n = 0.0, sum_rate = 0.0;
    for (const auto& o : obs) {
        sum_y += static_cast<double>(o.successes);
        sum_n += static_cast<double>(o.opportunities);
        sum_rate += static_cast<double>(o.successes) / static_cast<double>(o.opportunities);
    }
    const double count = static_cast<double>(obs.size());
    const double eta0 = std::clamp(sum_y / sum_n, 0.5 / sum_n, 1.0 - 0.5 / sum_n);
    const double mean_rate = sum_rate / count;
    double var = 0.0;
    for (const auto& o : obs) {
        const double d =
            static_cast<double>(o.successes) / static_cast<double>(o.opportunities) - mean_rate;
        var += d * d;
    }
    var /= std::max(count - 1.0, 1.0);
    const double n_bar = sum_n / count;

    double K0 = 100.0;
    const double inv = var / (eta0 * (1.0 - eta0)) - 1.0 / n_bar;
    if (inv > 0.0 && 1.0 / inv - 1.0 > 0.0) K0 = 1.0 / inv - 1.0;
    return {std::log(eta0 / (1.0 - eta0)), std::min(std::log(K0), log_K_cap)};
}

}  // namespace

double talent_sd(double eta, double K) { return std::sqrt(eta * (1.0 - eta) / (K + 1.0)); }

RandomEffectsFit RandomEffectsFit::from_parameters(double eta, double K) {
    if (!(eta > 0.0 && eta < 1.0) || !(K > 0.0))
        throw DomainError("random effects fit: need 0 < eta < 1 and K > 0");
    RandomEffectsFit fit;
    fit.eta = eta;
    fit.K = K;
    fit.talent_sd = cshrink::talent_sd(eta, K);
    return fit;
}

double log_marginal(Count y, Count n, double eta, double K) {
    check_counts(y, n);
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("log_marginal: eta must lie in (0, 1)");
    if (!(K > 0.0) || std::isinf(K)) throw DomainError("log_marginal: K must be positive");
    if (n == 0) return 0.0;
    const MarginalKernel kernel(eta, 1.0 - eta, K);
    return special::log_choose(static_cast<double>(n), static_cast<double>(y)) + kernel(y, n);
}

double log_posterior(std::span<const ComponentObservation> observations, Theta theta) {
    const auto obs = effective(observations);
    if (obs.empty()) throw DomainError("log_posterior: no observations with n > 0");
    return sum_log_choose(obs) + kernel_sum(obs, theta) + log_hyperprior(theta.log_K);
}

Theta log_posterior_gradient(std::span<const ComponentObservation> observations, Theta theta) {
    const auto obs = effective(observations);
    if (obs.empty()) throw DomainError("log_posterior_gradient: no observations with n > 0");
    const double eta = logistic(theta.logit_eta);
    const double one_minus = logistic(-theta.logit_eta);
    const double K = std::exp(theta.log_K);
    const double a = K * eta, b = K * one_minus;
    const double psi_a = digamma(a), psi_b = digamma(b), psi_K = digamma(K);

    double d_eta = 0.0, d_K = 0.0;
    for (const auto& o : obs) {
        const auto y = static_cast<double>(o.successes);
        const auto n = static_cast<double>(o.opportunities);
        const double A = digamma(y + a) - psi_a;
        const double B = digamma(n - y + b) - psi_b;
        const double C = psi_K - digamma(n + K);
        d_eta += K * eta * one_minus * (A - B);
        d_K += a * A + b * B + K * C;
    }
    d_K += 1.0 - 2.0 * logistic(theta.log_K);
    return {d_eta, d_K};
}

RandomEffectsFit fit_exchangeable(std::span<const ComponentObservation> observations,
                                  const ExchangeableFitOptions& options) {
    const auto obs = effective(observations);
    if (obs.size() < 2)
        throw InsufficientDataError("exchangeable fit needs at least 2 players with n > 0, got " +
                                    std::to_string(obs.size()));

    const double cap = options.log_K_cap;
    const double constant = sum_log_choose(obs);
    auto objective = [&](std::span<const double> x) {
        // Beyond the box the value is frozen at the boundary plus a quadratic
        // pull back, so the simplex settles on the face.
        const double t1 = std::clamp(x[0], -kLogitBound, kLogitBound);
        const double t2 = std::min(x[1], cap);
        const double excess = (x[0] - t1) * (x[0] - t1) + (x[1] - t2) * (x[1] - t2);
        return -(kernel_sum(obs, {t1, t2}) + log_hyperprior(t2)) + excess;
    };

    NelderMeadOptions nm;
    nm.f_tolerance = options.f_tolerance;
    nm.max_evaluations = options.max_evaluations;

    const Theta start = moment_start(obs, cap);
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> jitter(0.0, 1.0);

    NelderMeadResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int run = 0; run <= options.restarts; ++run) {
        std::vector<double> x0{start.logit_eta, start.log_K};
        if (run > 0) {
            x0[0] += 0.3 * jitter(rng);
            x0[1] = std::min(x0[1] + 1.0 * jitter(rng), cap);
        }
        auto result = nelder_mead(objective, x0, nm);
        if (result.value < best.value) best = std::move(result);
    }
    // Restart once from the best vertex with a small simplex.
    nm.initial_step = 0.05;
    auto polished = nelder_mead(objective, best.x, nm);
    if (polished.value <= best.value) {
        best = std::move(polished);
    } else {
        best.converged = best.converged && polished.converged;
    }

    Theta mode{std::clamp(best.x[0], -kLogitBound, kLogitBound), std::min(best.x[1], cap)};
    const bool at_bound = mode.log_K >= cap - 1e-4;
    if (at_bound) mode.log_K = cap;

    auto fit = RandomEffectsFit::from_parameters(logistic(mode.logit_eta), std::exp(mode.log_K));
    fit.log_posterior_at_mode = constant + kernel_sum(obs, mode) + log_hyperprior(mode.log_K);
    fit.converged = best.converged;
    fit.at_K_bound = at_bound;
    fit.n_players = obs.size();
    return fit;
}

double shrink(Count y, Count n, const RandomEffectsFit& fit) {
    check_counts(y, n);
    if (n == 0) return fit.eta;
    return (static_cast<double>(y) + fit.K * fit.eta) / (static_cast<double>(n) + fit.K);
}

double predictive_sd(Count n, const RandomEffectsFit& fit) {
    if (n < 1) throw DomainError("predictive_sd: n must be at least 1");
    return std::sqrt(fit.eta * (1.0 - fit.eta) *
                     (1.0 / static_cast<double>(n) + 1.0 / (fit.K + 1.0)));
}

double standardized_residual(Count y, Count n, const RandomEffectsFit& fit) {
    check_counts(y, n);
    if (n < 1) throw DomainError("standardized_residual: n must be at least 1");
    const double rate = static_cast<double>(y) / static_cast<double>(n);
    return (rate - fit.eta) / predictive_sd(n, fit);
}

std::vector<ShrunkenEstimate> shrink_all(std::span<const ComponentObservation> observations,
                                         const RandomEffectsFit& fit) {
    std::vector<ShrunkenEstimate> out;
    out.reserve(observations.size());
    for (const auto& o : observations)
        out.push_back({o.player_id, o.successes, o.opportunities,
                       shrink(o.successes, o.opportunities, fit)});
    return out;
}

}  // namespace cshrink
