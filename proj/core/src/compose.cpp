#include "cshrink/compose.hpp"

#include <cmath>

#include "cshrink/errors.hpp"

namespace cshrink {

double hit_probability(double p_SO, double p_HR, double p_HIP) {
    return (1.0 - p_SO) * (p_HR + (1.0 - p_HR) * p_HIP);
}

double on_base_probability(double p_BB, double p_H) { return p_BB + (1.0 - p_BB) * p_H; }

double fip_ability(const PitchingComponents& c, double constant) {
    const double not_walk = 1.0 - c.p_BB;
    // Outs per plate appearance: strikeouts plus outs on balls in play.
    const double outs = not_walk * (c.p_SO + (1.0 - c.p_SO) * (1.0 - c.p_HR) * (1.0 - c.p_HIP));
    if (!(outs > 0.0))
        throw DegeneratePitcherError("fip_ability: pitcher records no outs (denominator <= 0)");
    const double numerator =
        39.0 * not_walk * (1.0 - c.p_SO) * c.p_HR + 9.0 * c.p_BB - 6.0 * not_walk * c.p_SO;
    return numerator / outs + constant;
}

double fip_from_counts(double HR, double BB_HBP, double SO, double IP, double constant) {
    if (!(IP > 0.0)) throw DomainError("fip_from_counts: innings pitched must be positive");
    return (13.0 * HR + 3.0 * BB_HBP - 2.0 * SO) / IP + constant;
}

ExpectedPitchingCounts expected_counts(const PitchingComponents& c, double batters_faced) {
    const double not_walk = batters_faced * (1.0 - c.p_BB);
    ExpectedPitchingCounts out;
    out.BB_HBP = batters_faced * c.p_BB;
    out.SO = not_walk * c.p_SO;
    out.HR = not_walk * (1.0 - c.p_SO) * c.p_HR;
    out.IP = not_walk * (c.p_SO + (1.0 - c.p_SO) * (1.0 - c.p_HR) * (1.0 - c.p_HIP)) / 3.0;
    return out;
}

}  // namespace cshrink
