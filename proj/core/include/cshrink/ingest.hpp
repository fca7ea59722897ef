#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "cshrink/types.hpp"

namespace cshrink {

// One line of a Lahman Batting.csv file (a single stint).
struct BattingRow {
    std::string player_id;
    int year = 0;
    int stint = 0;
    Count AB = 0, H = 0, HR = 0, SO = 0, BB = 0, HBP = 0, SF = 0, SH = 0;
};

// One line of a Lahman Pitching.csv file (a single stint).
struct PitchingRow {
    std::string player_id;
    int year = 0;
    int stint = 0;
    Count BFP = 0, IPouts = 0, H = 0, HR = 0, SO = 0, BB = 0, HBP = 0;
};

// Season totals for a batter, summed over stints.
struct PlayerSeasonBatting {
    std::string player_id;
    int year = 0;
    Count AB = 0, H = 0, HR = 0, SO = 0, BB = 0, HBP = 0, SF = 0, SH = 0;
};

// Season totals for a pitcher, summed over stints.
struct PlayerSeasonPitching {
    std::string player_id;
    int year = 0;
    Count BFP = 0, IPouts = 0, H = 0, HR = 0, SO = 0, BB = 0, HBP = 0;

    double innings() const noexcept { return static_cast<double>(IPouts) / 3.0; }
};

// Header-driven CSV readers. Column order is irrelevant, extra columns are
// ignored, and empty count fields read as 0. Throws SchemaError when a
// required column is absent and ParseError (with the 1-based line number)
// when a count field is not a non-negative integer.
std::vector<BattingRow> parse_batting_csv(std::istream& source);
std::vector<PitchingRow> parse_pitching_csv(std::istream& source);

// Sums stints within (player_id, year). Output is sorted by (year, player_id)
// and independent of input order. Throws DataIntegrityError if a summed record
// breaks the count invariants.
std::vector<PlayerSeasonBatting> aggregate_stints(std::span<const BattingRow> rows);
std::vector<PlayerSeasonPitching> aggregate_stints(std::span<const PitchingRow> rows);

void validate(const PlayerSeasonBatting& s);
void validate(const PlayerSeasonPitching& s);

// Batting components for players with AB >= min_ab:
//   SO  = (SO, AB)
//   HR  = (HR, AB - SO)
//   HIP = (H - HR, AB - SO - HR)
//   BB  = (BB + HBP, AB + BB + HBP)
// Zero-opportunity observations are kept.
ComponentSet derive_batting_components(std::span<const PlayerSeasonBatting> seasons, Count min_ab);

// Pitching components for players with BFP >= min_bfp, following the
// plate-appearance chain BFP -> non-walks -> non-strikeouts -> balls in play.
ComponentSet derive_pitching_components(std::span<const PlayerSeasonPitching> seasons,
                                        Count min_bfp);

// Convenience: select the records of one season.
std::vector<PlayerSeasonBatting> season_of(std::span<const PlayerSeasonBatting> all, int year);
std::vector<PlayerSeasonPitching> season_of(std::span<const PlayerSeasonPitching> all, int year);

}  // namespace cshrink
