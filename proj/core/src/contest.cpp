#include "cshrink/contest.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "cshrink/compose.hpp"
#include "cshrink/errors.hpp"

namespace cshrink {
namespace {

template <typename Record, typename Eligible>
std::unordered_map<std::string, const Record*> index_eligible(const std::vector<Record>& records,
                                                              Eligible eligible) {
    std::unordered_map<std::string, const Record*> out;
    for (const auto& r : records)
        if (eligible(r)) out.emplace(r.player_id, &r);
    return out;
}

// Train-season records of players eligible in both seasons, in train order,
// with the matching test records alongside.
template <typename Record, typename Eligible>
std::pair<std::vector<Record>, std::vector<const Record*>> paired(
    const std::vector<Record>& train, const std::vector<Record>& test, Eligible eligible) {
    const auto test_index = index_eligible(test, eligible);
    std::pair<std::vector<Record>, std::vector<const Record*>> out;
    for (const auto& r : train) {
        if (!eligible(r)) continue;
        auto it = test_index.find(r.player_id);
        if (it == test_index.end()) continue;
        out.first.push_back(r);
        out.second.push_back(it->second);
    }
    return out;
}

double ratio(Count num, Count den) { return static_cast<double>(num) / static_cast<double>(den); }

double observed_fip(const PlayerSeasonPitching& s) {
    if (s.IPouts <= 0)
        throw DataIntegrityError(s.player_id + " (" + std::to_string(s.year) +
                                 "): eligible pitcher with zero innings pitched");
    return fip_from_counts(static_cast<double>(s.HR), static_cast<double>(s.BB + s.HBP),
                           static_cast<double>(s.SO), s.innings());
}

ContestResult finish(Measure measure, const SeasonData& train, const SeasonData& test,
                     const std::vector<double>& component, const std::vector<double>& single,
                     const std::vector<double>& outcomes) {
    ContestResult r;
    r.train_year = train.year;
    r.test_year = test.year;
    r.measure = measure;
    r.S_C = rss_error(component, outcomes);
    r.S_I = rss_error(single, outcomes);
    r.improvement = r.S_I - r.S_C;
    r.n_players = outcomes.size();
    return r;
}

void require_pairs(std::size_t n, const SeasonData& train, const SeasonData& test) {
    if (n == 0)
        throw InsufficientDataError("no players eligible in both " + std::to_string(train.year) +
                                    " and " + std::to_string(test.year));
}

ContestResult batting_contest(Measure measure, const SeasonData& train, const SeasonData& test,
                              const ContestOptions& options) {
    const Count min_ab = options.eligibility.min_ab;
    auto [train_players, test_players] =
        paired(train.batting, test.batting, [&](const auto& s) { return s.AB >= min_ab; });
    require_pairs(train_players.size(), train, test);

    const auto component = estimate_batting(train_players, min_ab, options.betabin);

    std::vector<ComponentObservation> raw;
    for (const auto& s : train_players) {
        if (measure == Measure::BA)
            raw.push_back({s.player_id, s.H, s.AB});
        else
            raw.push_back({s.player_id, s.H + s.BB + s.HBP, s.AB + s.BB + s.HBP});
    }
    const auto single_fit = fit_exchangeable(raw, options.betabin);

    std::vector<double> comp_pred, single_pred, outcomes;
    for (std::size_t i = 0; i < train_players.size(); ++i) {
        const auto& e = component.players[i];
        const auto& t = *test_players[i];
        comp_pred.push_back(measure == Measure::BA ? e.p_H : e.p_OB);
        single_pred.push_back(shrink(raw[i].successes, raw[i].opportunities, single_fit));
        outcomes.push_back(measure == Measure::BA ? ratio(t.H, t.AB)
                                                  : ratio(t.H + t.BB + t.HBP, t.AB + t.BB + t.HBP));
    }
    return finish(measure, train, test, comp_pred, single_pred, outcomes);
}

ContestResult fip_contest(const SeasonData& train, const SeasonData& test,
                          const ContestOptions& options) {
    const Count min_bfp = options.eligibility.min_bfp;
    auto [train_players, test_players] =
        paired(train.pitching, test.pitching, [&](const auto& s) { return s.BFP >= min_bfp; });
    require_pairs(train_players.size(), train, test);

    const auto component = estimate_pitching(train_players, min_bfp, options.betabin);

    std::vector<NormalObservation> raw;
    for (const auto& s : train_players) raw.push_back({s.player_id, observed_fip(s), s.innings()});
    const auto single_fit = fit_normal_exchangeable(raw, options.normal);

    std::vector<double> comp_pred, single_pred, outcomes;
    for (std::size_t i = 0; i < train_players.size(); ++i) {
        comp_pred.push_back(component.players[i].mu_fip);
        single_pred.push_back(shrink_normal(raw[i].value, raw[i].weight, single_fit));
        outcomes.push_back(observed_fip(*test_players[i]));
    }
    return finish(Measure::FIP, train, test, comp_pred, single_pred, outcomes);
}

}  // namespace

std::vector<SeasonData> split_by_season(std::span<const PlayerSeasonBatting> batting,
                                        std::span<const PlayerSeasonPitching> pitching) {
    std::map<int, SeasonData> by_year;
    for (const auto& b : batting) {
        auto& s = by_year[b.year];
        s.year = b.year;
        s.batting.push_back(b);
    }
    for (const auto& p : pitching) {
        auto& s = by_year[p.year];
        s.year = p.year;
        s.pitching.push_back(p);
    }
    std::vector<SeasonData> out;
    for (auto& [year, season] : by_year) out.push_back(std::move(season));
    return out;
}

double rss_error(std::span<const double> predictions, std::span<const double> outcomes) {
    if (predictions.size() != outcomes.size())
        throw DomainError("rss_error: predictions and outcomes differ in length");
    if (predictions.empty()) throw DomainError("rss_error: empty input");
    double total = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = outcomes[i] - predictions[i];
        total += d * d;
    }
    return std::sqrt(total);
}

ContestResult run_contest(Measure measure, const SeasonData& train, const SeasonData& test,
                          const ContestOptions& options) {
    if (measure == Measure::FIP) return fip_contest(train, test, options);
    return batting_contest(measure, train, test, options);
}

HistoryReport history(std::span<const SeasonData> seasons, Component component,
                      Population population, const Eligibility& eligibility,
                      const ExchangeableFitOptions& options) {
    HistoryReport report;
    for (const auto& season : seasons) {
        try {
            const auto set = season_components(population, season.batting, season.pitching,
                                               eligibility);
            const auto fit = fit_exchangeable(set[component], options);
            report.points.push_back({season.year, component, population, fit.eta, fit.K,
                                     fit.talent_sd, fit.converged, fit.at_K_bound,
                                     fit.n_players});
        } catch (const std::exception& e) {
            report.failures.push_back({season.year, e.what()});
        }
    }
    return report;
}

SeasonFits fit_all_seasons(std::span<const SeasonData> seasons, Population population,
                           const Eligibility& eligibility, const ExchangeableFitOptions& options,
                           std::vector<SeasonFailure>* failures) {
    SeasonFits fits;
    for (const auto& season : seasons) {
        const auto set =
            season_components(population, season.batting, season.pitching, eligibility);
        for (auto c : kAllComponents) {
            try {
                fits.emplace(std::pair{season.year, c}, fit_exchangeable(set[c], options));
            } catch (const std::exception& e) {
                if (failures)
                    failures->push_back(
                        {season.year, std::string(to_string(c)) + ": " + e.what()});
            }
        }
    }
    return fits;
}

std::vector<TrajectoryPoint> trajectory(const std::string& player_id,
                                        std::span<const SeasonData> seasons,
                                        const SeasonFits& fits, Population population,
                                        const Eligibility& eligibility) {
    constexpr std::array<Component, 4> kPanelOrder{Component::BB, Component::SO, Component::HR,
                                                   Component::HIP};
    std::vector<TrajectoryPoint> out;
    for (const auto& season : seasons) {
        ComponentSet set;
        if (population == Population::Batters) {
            auto it = std::find_if(season.batting.begin(), season.batting.end(),
                                   [&](const auto& s) { return s.player_id == player_id; });
            if (it == season.batting.end()) continue;
            set = derive_batting_components(std::span(&*it, 1), eligibility.min_ab);
        } else {
            auto it = std::find_if(season.pitching.begin(), season.pitching.end(),
                                   [&](const auto& s) { return s.player_id == player_id; });
            if (it == season.pitching.end()) continue;
            set = derive_pitching_components(std::span(&*it, 1), eligibility.min_bfp);
        }
        if (set.size() == 0) continue;

        for (auto c : kPanelOrder) {
            const auto& o = set[c].front();
            if (o.opportunities == 0) continue;
            auto fit = fits.find({season.year, c});
            if (fit == fits.end())
                throw ConfigurationError("no " + std::string(to_string(c)) + " fit for season " +
                                         std::to_string(season.year));
            out.push_back({player_id, season.year, c,
                           static_cast<double>(o.successes) / static_cast<double>(o.opportunities),
                           standardized_residual(o.successes, o.opportunities, fit->second)});
        }
    }
    return out;
}

}  // namespace cshrink
