#include "cshrink/simulate.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "cshrink/errors.hpp"

namespace cshrink {
namespace {

using Rng = std::mt19937_64;

double draw_beta(Rng& rng, const TalentCurve& curve) {
    std::gamma_distribution<double> ga(curve.K * curve.eta, 1.0);
    std::gamma_distribution<double> gb(curve.K * (1.0 - curve.eta), 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return std::clamp(x / (x + y), 1e-9, 1.0 - 1e-9);
}

Count binomial(Rng& rng, Count n, double p) {
    if (n <= 0) return 0;
    return std::binomial_distribution<Count>(n, p)(rng);
}

Count uniform(Rng& rng, Count lo, Count hi) {
    return std::uniform_int_distribution<Count>(lo, std::max(lo, hi))(rng);
}

std::string make_id(const char* prefix, int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%05d", prefix, i);
    return buf;
}

}  // namespace

SimulatedLeague simulate_league(const SimulationOptions& o) {
    if (o.year_to < o.year_from) throw DomainError("simulate: year_to precedes year_from");
    if (o.n_batters < 0 || o.n_pitchers < 0) throw DomainError("simulate: negative roster size");
    Rng rng(o.seed);

    struct BatterTalent {
        double so, hr, hip, bb;
    };
    std::vector<BatterTalent> batters(static_cast<std::size_t>(o.n_batters));
    for (auto& b : batters)
        b = {draw_beta(rng, o.batting.so), draw_beta(rng, o.batting.hr),
             draw_beta(rng, o.batting.hip), draw_beta(rng, o.batting.bb)};

    struct PitcherTalent {
        double bb, so, hr, hip;
    };
    std::vector<PitcherTalent> pitchers(static_cast<std::size_t>(o.n_pitchers));
    for (auto& p : pitchers)
        p = {draw_beta(rng, o.pitching.bb), draw_beta(rng, o.pitching.so),
             draw_beta(rng, o.pitching.hr), draw_beta(rng, o.pitching.hip)};

    SimulatedLeague league;
    for (int year = o.year_from; year <= o.year_to; ++year) {
        for (std::size_t i = 0; i < batters.size(); ++i) {
            const auto& t = batters[i];
            BattingRow r;
            r.player_id = make_id("bsim", static_cast<int>(i));
            r.year = year;
            r.stint = 1;
            r.AB = uniform(rng, o.min_ab, o.max_ab);
            r.SO = binomial(rng, r.AB, t.so);
            r.HR = binomial(rng, r.AB - r.SO, t.hr);
            const Count hip = binomial(rng, r.AB - r.SO - r.HR, t.hip);
            r.H = r.HR + hip;
            // Walks before the AB-th non-walk plate appearance.
            const Count walks =
                r.AB > 0 ? std::negative_binomial_distribution<Count>(r.AB, 1.0 - t.bb)(rng) : 0;
            r.HBP = binomial(rng, walks, o.batting.hbp_share);
            r.BB = walks - r.HBP;
            league.batting.push_back(std::move(r));
        }
        for (std::size_t i = 0; i < pitchers.size(); ++i) {
            const auto& t = pitchers[i];
            PitchingRow r;
            r.player_id = make_id("psim", static_cast<int>(i));
            r.year = year;
            r.stint = 1;
            r.BFP = uniform(rng, o.min_bfp, o.max_bfp);
            const Count walks = binomial(rng, r.BFP, t.bb);
            r.SO = binomial(rng, r.BFP - walks, t.so);
            r.HR = binomial(rng, r.BFP - walks - r.SO, t.hr);
            const Count in_play = r.BFP - walks - r.SO - r.HR;
            const Count hip = binomial(rng, in_play, t.hip);
            r.H = r.HR + hip;
            r.IPouts = r.SO + (in_play - hip);
            r.HBP = binomial(rng, walks, o.pitching.hbp_share);
            r.BB = walks - r.HBP;
            league.pitching.push_back(std::move(r));
        }
    }
    return league;
}

}  // namespace cshrink
