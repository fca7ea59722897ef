#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cshrink/betabin.hpp"
#include "cshrink/ingest.hpp"
#include "cshrink/normalmodel.hpp"
#include "cshrink/pipeline.hpp"
#include "cshrink/types.hpp"

namespace cshrink {

// All records for one season.
struct SeasonData {
    int year = 0;
    std::vector<PlayerSeasonBatting> batting;
    std::vector<PlayerSeasonPitching> pitching;
};

// Splits aggregated records into per-season buckets, ordered by year.
std::vector<SeasonData> split_by_season(std::span<const PlayerSeasonBatting> batting,
                                        std::span<const PlayerSeasonPitching> pitching);

struct ContestOptions {
    Eligibility eligibility;
    ExchangeableFitOptions betabin;
    NormalFitOptions normal;
};

struct ContestResult {
    int train_year = 0;
    int test_year = 0;
    Measure measure = Measure::BA;
    double S_C = 0.0;
    double S_I = 0.0;
    double improvement = 0.0;  // S_I - S_C
    std::size_t n_players = 0;
};

// sqrt(sum (outcome - prediction)^2). Throws DomainError on length mismatch
// or empty input.
double rss_error(std::span<const double> predictions, std::span<const double> outcomes);

// Fits both methods on `train` for players eligible in both seasons and scores
// their predictions of the `test` season's observed rates.
ContestResult run_contest(Measure measure, const SeasonData& train, const SeasonData& test,
                          const ContestOptions& options = {});

struct HistoryPoint {
    int year = 0;
    Component component = Component::SO;
    Population population = Population::Batters;
    double eta_hat = 0.0;
    double K_hat = 0.0;
    double sd_hat = 0.0;
    bool converged = false;
    bool at_K_bound = false;
    std::size_t n_players = 0;
};

struct SeasonFailure {
    int year = 0;
    std::string message;
};

struct HistoryReport {
    std::vector<HistoryPoint> points;
    std::vector<SeasonFailure> failures;
};

// One independent exchangeable fit per season. Seasons whose fit fails are
// listed in `failures` instead of aborting the run.
HistoryReport history(std::span<const SeasonData> seasons, Component component,
                      Population population, const Eligibility& eligibility,
                      const ExchangeableFitOptions& options = {});

struct TrajectoryPoint {
    std::string player_id;
    int year = 0;
    Component component = Component::SO;
    double raw_rate = 0.0;
    double z = 0.0;
};

using SeasonFits = std::map<std::pair<int, Component>, RandomEffectsFit>;

// Fits all four components for every season in which the population has
// enough eligible players.
SeasonFits fit_all_seasons(std::span<const SeasonData> seasons, Population population,
                           const Eligibility& eligibility, const ExchangeableFitOptions& options,
                           std::vector<SeasonFailure>* failures = nullptr);

// Standardized residuals for one player, one row per (eligible season,
// component with n > 0). Throws ConfigurationError when a covered season has
// no fit.
std::vector<TrajectoryPoint> trajectory(const std::string& player_id,
                                        std::span<const SeasonData> seasons,
                                        const SeasonFits& fits, Population population,
                                        const Eligibility& eligibility);

}  // namespace cshrink
