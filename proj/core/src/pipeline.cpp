#include "cshrink/pipeline.hpp"

#include <cmath>
#include <limits>

#include "cshrink/compose.hpp"

namespace cshrink {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rate(const ComponentObservation& o) {
    return o.opportunities > 0
               ? static_cast<double>(o.successes) / static_cast<double>(o.opportunities)
               : kNaN;
}

void fill_rates(const ComponentSet& set, const ComponentFits& fits, std::size_t i,
                std::array<double, 4>& raw, std::array<double, 4>& shrunk) {
    for (auto c : kAllComponents) {
        const auto& o = set[c][i];
        const auto k = static_cast<std::size_t>(c);
        raw[k] = rate(o);
        shrunk[k] = shrink(o.successes, o.opportunities, fits[c]);
    }
}

}  // namespace

ComponentFits fit_components(const ComponentSet& set, const ExchangeableFitOptions& options) {
    ComponentFits fits;
    for (auto c : kAllComponents) fits[c] = fit_exchangeable(set[c], options);
    return fits;
}

BattingEstimates estimate_batting(std::span<const PlayerSeasonBatting> season, Count min_ab,
                                  const ExchangeableFitOptions& options) {
    const ComponentSet set = derive_batting_components(season, min_ab);
    BattingEstimates out{fit_components(set, options), {}};

    std::size_t i = 0;
    for (const auto& s : season) {
        if (s.AB < min_ab) continue;
        BatterEstimate e;
        e.player_id = s.player_id;
        e.AB = s.AB;
        fill_rates(set, out.fits, i, e.raw, e.shrunk);
        e.raw_ba = static_cast<double>(s.H) / static_cast<double>(s.AB);
        e.raw_obp = static_cast<double>(s.H + s.BB + s.HBP) /
                    static_cast<double>(s.AB + s.BB + s.HBP);
        const auto& p = e.shrunk;
        e.p_H = hit_probability(p[0], p[1], p[2]);
        e.p_OB = on_base_probability(p[3], e.p_H);
        out.players.push_back(std::move(e));
        ++i;
    }
    return out;
}

PitchingEstimates estimate_pitching(std::span<const PlayerSeasonPitching> season, Count min_bfp,
                                    const ExchangeableFitOptions& options) {
    const ComponentSet set = derive_pitching_components(season, min_bfp);
    PitchingEstimates out{fit_components(set, options), {}};

    std::size_t i = 0;
    for (const auto& s : season) {
        if (s.BFP < min_bfp) continue;
        PitcherEstimate e;
        e.player_id = s.player_id;
        e.BFP = s.BFP;
        e.IP = s.innings();
        fill_rates(set, out.fits, i, e.raw, e.shrunk);
        e.raw_fip = e.IP > 0.0 ? fip_from_counts(static_cast<double>(s.HR),
                                                 static_cast<double>(s.BB + s.HBP),
                                                 static_cast<double>(s.SO), e.IP)
                               : kNaN;
        const auto& p = e.shrunk;
        e.mu_fip = fip_ability({.p_BB = p[3], .p_SO = p[0], .p_HR = p[1], .p_HIP = p[2]});
        out.players.push_back(std::move(e));
        ++i;
    }
    return out;
}

ComponentSet season_components(Population population, std::span<const PlayerSeasonBatting> batting,
                               std::span<const PlayerSeasonPitching> pitching,
                               const Eligibility& eligibility) {
    return population == Population::Batters
               ? derive_batting_components(batting, eligibility.min_ab)
               : derive_pitching_components(pitching, eligibility.min_bfp);
}

}  // namespace cshrink
