#pragma once

namespace cshrink {

struct BattingComponents {
    double p_SO = 0.0;
    double p_HR = 0.0;
    double p_HIP = 0.0;
    double p_BB = 0.0;
};

struct PitchingComponents {
    double p_BB = 0.0;
    double p_SO = 0.0;
    double p_HR = 0.0;
    double p_HIP = 0.0;
};

// Probability an at-bat is a hit: (1 - p_SO) (p_HR + (1 - p_HR) p_HIP).
double hit_probability(double p_SO, double p_HR, double p_HIP);
inline double hit_probability(const BattingComponents& c) {
    return hit_probability(c.p_SO, c.p_HR, c.p_HIP);
}

// Probability a plate appearance reaches base, sacrifices ignored:
// p_BB + (1 - p_BB) p_H.
double on_base_probability(double p_BB, double p_H);

// Constant-free FIP implied by per-plate-appearance probabilities. The
// batters-faced count cancels, so the result is a pure function of rates.
// Throws DegeneratePitcherError if no outs can be recorded.
double fip_ability(const PitchingComponents& c, double constant = 0.0);

// (13 HR + 3 (BB + HBP) - 2 SO) / IP + constant. Throws DomainError if IP <= 0.
double fip_from_counts(double HR, double BB_HBP, double SO, double IP, double constant = 0.0);

// Expected counts for a pitcher facing `batters_faced` hitters with the given
// probabilities. Useful for checking fip_ability against fip_from_counts.
struct ExpectedPitchingCounts {
    double HR = 0.0;
    double BB_HBP = 0.0;
    double SO = 0.0;
    double IP = 0.0;
};
ExpectedPitchingCounts expected_counts(const PitchingComponents& c, double batters_faced);

}  // namespace cshrink
