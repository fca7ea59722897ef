#include "cshrink/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <string_view>
#include <tuple>
#include <unordered_map>

#include <boost/tokenizer.hpp>

#include "cshrink/errors.hpp"

namespace cshrink {
namespace {

using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    Tokenizer tok(line);
    for (const auto& f : tok) fields.push_back(f);
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Maps header names to field positions and reads typed values out of a row.
class HeaderIndex {
public:
    HeaderIndex(const std::string& header_line, std::initializer_list<std::string_view> required) {
        auto names = split_line(header_line);
        for (std::size_t i = 0; i < names.size(); ++i) {
            auto name = std::string(trim(names[i]));
            if (i == 0 && name.starts_with("\xEF\xBB\xBF")) name.erase(0, 3);  // UTF-8 BOM
            positions_.emplace(std::move(name), i);
        }
        for (auto col : required)
            if (!positions_.contains(std::string(col))) throw SchemaError(std::string(col));
    }

    std::string_view field(const std::vector<std::string>& row, std::string_view col) const {
        const std::size_t pos = positions_.at(std::string(col));
        return pos < row.size() ? trim(row[pos]) : std::string_view{};
    }

    Count count(const std::vector<std::string>& row, std::string_view col, std::size_t line) const {
        const auto text = field(row, col);
        if (text.empty()) return 0;
        Count value = 0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || end != text.data() + text.size())
            throw ParseError(line, "column " + std::string(col) + ": \"" + std::string(text) +
                                       "\" is not an integer");
        if (value < 0)
            throw ParseError(line, "column " + std::string(col) + ": negative count " +
                                       std::string(text));
        return value;
    }

    int integer(const std::vector<std::string>& row, std::string_view col, std::size_t line) const {
        const auto text = field(row, col);
        int value = 0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
            throw ParseError(line, "column " + std::string(col) + ": \"" + std::string(text) +
                                       "\" is not an integer");
        return value;
    }

private:
    std::unordered_map<std::string, std::size_t> positions_;
};

template <typename Row, typename Fill>
std::vector<Row> read_table(std::istream& source, std::initializer_list<std::string_view> required,
                            Fill fill) {
    std::string line;
    if (!std::getline(source, line)) throw SchemaError(std::string(*required.begin()));
    const HeaderIndex index(line, required);

    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        try {
            fields = split_line(line);
        } catch (const boost::escaped_list_error& e) {
            throw ParseError(line_no, e.what());
        }
        rows.push_back(fill(index, fields, line_no));
    }
    return rows;
}

std::string player_year(const std::string& id, int year) {
    return id + " (" + std::to_string(year) + ")";
}

}  // namespace

std::vector<BattingRow> parse_batting_csv(std::istream& source) {
    return read_table<BattingRow>(
        source, {"playerID", "yearID", "stint", "AB", "H", "HR", "SO", "BB", "HBP", "SF", "SH"},
        [](const HeaderIndex& ix, const std::vector<std::string>& f, std::size_t line) {
            BattingRow r;
            r.player_id = std::string(ix.field(f, "playerID"));
            if (r.player_id.empty()) throw ParseError(line, "empty playerID");
            r.year = ix.integer(f, "yearID", line);
            r.stint = ix.integer(f, "stint", line);
            r.AB = ix.count(f, "AB", line);
            r.H = ix.count(f, "H", line);
            r.HR = ix.count(f, "HR", line);
            r.SO = ix.count(f, "SO", line);
            r.BB = ix.count(f, "BB", line);
            r.HBP = ix.count(f, "HBP", line);
            r.SF = ix.count(f, "SF", line);
            r.SH = ix.count(f, "SH", line);
            return r;
        });
}

std::vector<PitchingRow> parse_pitching_csv(std::istream& source) {
    return read_table<PitchingRow>(
        source, {"playerID", "yearID", "stint", "BFP", "IPouts", "H", "HR", "SO", "BB", "HBP"},
        [](const HeaderIndex& ix, const std::vector<std::string>& f, std::size_t line) {
            PitchingRow r;
            r.player_id = std::string(ix.field(f, "playerID"));
            if (r.player_id.empty()) throw ParseError(line, "empty playerID");
            r.year = ix.integer(f, "yearID", line);
            r.stint = ix.integer(f, "stint", line);
            r.BFP = ix.count(f, "BFP", line);
            r.IPouts = ix.count(f, "IPouts", line);
            r.H = ix.count(f, "H", line);
            r.HR = ix.count(f, "HR", line);
            r.SO = ix.count(f, "SO", line);
            r.BB = ix.count(f, "BB", line);
            r.HBP = ix.count(f, "HBP", line);
            return r;
        });
}

void validate(const PlayerSeasonBatting& s) {
    const auto where = player_year(s.player_id, s.year);
    for (Count c : {s.AB, s.H, s.HR, s.SO, s.BB, s.HBP, s.SF, s.SH})
        if (c < 0) throw DataIntegrityError(where + ": negative count");
    if (s.H > s.AB) throw DataIntegrityError(where + ": H > AB");
    if (s.HR > s.H) throw DataIntegrityError(where + ": HR > H");
    if (s.SO > s.AB - s.H) throw DataIntegrityError(where + ": SO > AB - H");
    if (s.SO + s.HR > s.AB) throw DataIntegrityError(where + ": SO + HR > AB");
}

void validate(const PlayerSeasonPitching& s) {
    const auto where = player_year(s.player_id, s.year);
    for (Count c : {s.BFP, s.IPouts, s.H, s.HR, s.SO, s.BB, s.HBP})
        if (c < 0) throw DataIntegrityError(where + ": negative count");
    if (s.SO > s.IPouts) throw DataIntegrityError(where + ": SO > IPouts");
    if (s.HR > s.H) throw DataIntegrityError(where + ": HR > H");
}

std::vector<PlayerSeasonBatting> aggregate_stints(std::span<const BattingRow> rows) {
    std::map<std::pair<int, std::string>, PlayerSeasonBatting> totals;
    for (const auto& r : rows) {
        auto& t = totals[{r.year, r.player_id}];
        t.player_id = r.player_id;
        t.year = r.year;
        t.AB += r.AB;
        t.H += r.H;
        t.HR += r.HR;
        t.SO += r.SO;
        t.BB += r.BB;
        t.HBP += r.HBP;
        t.SF += r.SF;
        t.SH += r.SH;
    }
    std::vector<PlayerSeasonBatting> out;
    out.reserve(totals.size());
    for (auto& [key, season] : totals) {
        validate(season);
        out.push_back(std::move(season));
    }
    return out;
}

std::vector<PlayerSeasonPitching> aggregate_stints(std::span<const PitchingRow> rows) {
    std::map<std::pair<int, std::string>, PlayerSeasonPitching> totals;
    for (const auto& r : rows) {
        auto& t = totals[{r.year, r.player_id}];
        t.player_id = r.player_id;
        t.year = r.year;
        t.BFP += r.BFP;
        t.IPouts += r.IPouts;
        t.H += r.H;
        t.HR += r.HR;
        t.SO += r.SO;
        t.BB += r.BB;
        t.HBP += r.HBP;
    }
    std::vector<PlayerSeasonPitching> out;
    out.reserve(totals.size());
    for (auto& [key, season] : totals) {
        validate(season);
        out.push_back(std::move(season));
    }
    return out;
}

ComponentSet derive_batting_components(std::span<const PlayerSeasonBatting> seasons, Count min_ab) {
    if (min_ab < 1) throw DomainError("min_AB must be at least 1");
    ComponentSet set;
    for (const auto& s : seasons) {
        if (s.AB < min_ab) continue;
        const Count not_so = s.AB - s.SO;
        set.so.push_back({s.player_id, s.SO, s.AB});
        set.hr.push_back({s.player_id, s.HR, not_so});
        set.hip.push_back({s.player_id, s.H - s.HR, not_so - s.HR});
        set.bb.push_back({s.player_id, s.BB + s.HBP, s.AB + s.BB + s.HBP});
    }
    return set;
}

ComponentSet derive_pitching_components(std::span<const PlayerSeasonPitching> seasons,
                                        Count min_bfp) {
    if (min_bfp < 1) throw DomainError("min_BFP must be at least 1");
    ComponentSet set;
    for (const auto& s : seasons) {
        if (s.BFP < min_bfp) continue;
        const Count walks = s.BB + s.HBP;
        const Count non_walks = s.BFP - walks;
        const Count non_so = non_walks - s.SO;
        const Count in_play = non_so - s.HR;
        const Count hip = s.H - s.HR;
        if (non_walks < 0 || non_so < 0 || in_play < 0)
            throw DataIntegrityError(player_year(s.player_id, s.year) +
                                     ": negative derived opportunity count");
        if (hip > in_play)
            throw DataIntegrityError(player_year(s.player_id, s.year) +
                                     ": more hits in play than balls in play");
        set.bb.push_back({s.player_id, walks, s.BFP});
        set.so.push_back({s.player_id, s.SO, non_walks});
        set.hr.push_back({s.player_id, s.HR, non_so});
        set.hip.push_back({s.player_id, hip, in_play});
    }
    return set;
}

std::vector<PlayerSeasonBatting> season_of(std::span<const PlayerSeasonBatting> all, int year) {
    std::vector<PlayerSeasonBatting> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [year](const auto& s) { return s.year == year; });
    return out;
}

std::vector<PlayerSeasonPitching> season_of(std::span<const PlayerSeasonPitching> all, int year) {
    std::vector<PlayerSeasonPitching> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [year](const auto& s) { return s.year == year; });
    return out;
}

}  // namespace cshrink
