#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "cshrink/betabin.hpp"
#include "cshrink/ingest.hpp"
#include "cshrink/types.hpp"

namespace cshrink {

struct Eligibility {
    Count min_ab = 100;
    Count min_bfp = 300;
};

// One fit per component, indexed by Component.
struct ComponentFits {
    std::array<RandomEffectsFit, 4> fits;

    const RandomEffectsFit& operator[](Component c) const {
        return fits[static_cast<std::size_t>(c)];
    }
    RandomEffectsFit& operator[](Component c) { return fits[static_cast<std::size_t>(c)]; }
};

ComponentFits fit_components(const ComponentSet& set, const ExchangeableFitOptions& options);

// Per-player raw and shrunken component rates plus the composed abilities.
struct BatterEstimate {
    std::string player_id;
    Count AB = 0;
    std::array<double, 4> raw{};     // by Component; NaN when n == 0
    std::array<double, 4> shrunk{};  // by Component
    double raw_ba = 0.0;
    double raw_obp = 0.0;
    double p_H = 0.0;
    double p_OB = 0.0;
};

struct PitcherEstimate {
    std::string player_id;
    Count BFP = 0;
    double IP = 0.0;
    std::array<double, 4> raw{};
    std::array<double, 4> shrunk{};
    double raw_fip = 0.0;  // NaN when IP == 0
    double mu_fip = 0.0;
};

struct BattingEstimates {
    ComponentFits fits;
    std::vector<BatterEstimate> players;
};

struct PitchingEstimates {
    ComponentFits fits;
    std::vector<PitcherEstimate> players;
};

BattingEstimates estimate_batting(std::span<const PlayerSeasonBatting> season, Count min_ab,
                                  const ExchangeableFitOptions& options);
PitchingEstimates estimate_pitching(std::span<const PlayerSeasonPitching> season, Count min_bfp,
                                    const ExchangeableFitOptions& options);

// Component observations for one population in one season.
ComponentSet season_components(Population population, std::span<const PlayerSeasonBatting> batting,
                               std::span<const PlayerSeasonPitching> pitching,
                               const Eligibility& eligibility);

}  // namespace cshrink
