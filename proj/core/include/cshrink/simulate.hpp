#pragma once

#include <cstdint>
#include <vector>

#include "cshrink/ingest.hpp"

namespace cshrink {

// Beta talent curve parameterized by mean and precision.
struct TalentCurve {
    double eta = 0.5;
    double K = 1.0;
};

struct BattingTruth {
    TalentCurve so{0.203, 40.60};
    TalentCurve hr{0.0369, 65.70};
    TalentCurve hip{0.303, 418.10};
    TalentCurve bb{0.085, 60.0};
    double hbp_share = 0.1;  // fraction of BB+HBP events that are HBP
};

struct PitchingTruth {
    TalentCurve bb{0.080, 150.0};
    TalentCurve so{0.200, 80.0};
    TalentCurve hr{0.030, 300.0};
    TalentCurve hip{0.300, 1000.0};
    double hbp_share = 0.1;
};

struct SimulationOptions {
    int year_from = 2000;
    int year_to = 2001;
    int n_batters = 400;
    int n_pitchers = 300;
    Count min_ab = 500;   // at-bats per season drawn uniformly from [min_ab, max_ab]
    Count max_ab = 500;
    Count min_bfp = 150;
    Count max_bfp = 1000;
    BattingTruth batting;
    PitchingTruth pitching;
    std::uint64_t seed = 0;
};

// Synthetic league whose players keep fixed true component probabilities
// (drawn once from the talent curves) across all simulated seasons.
struct SimulatedLeague {
    std::vector<BattingRow> batting;
    std::vector<PitchingRow> pitching;
};

SimulatedLeague simulate_league(const SimulationOptions& options);

}  // namespace cshrink
