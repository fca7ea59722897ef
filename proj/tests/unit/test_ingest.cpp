#include <algorithm>
#include <random>
#include <sstream>

#include "cshrink/errors.hpp"
#include "cshrink/ingest.hpp"
#include "doctest.h"

using namespace cshrink;

namespace {

const char* kHeader = "playerID,yearID,stint,teamID,G,AB,R,H,2B,3B,HR,RBI,SB,CS,BB,SO,IBB,HBP,SH,SF,GIDP\n";

std::vector<BattingRow> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_batting_csv(in);
}

BattingRow row(std::string id, int year, int stint, Count ab, Count h, Count hr = 0, Count so = 0) {
    BattingRow r;
    r.player_id = std::move(id);
    r.year = year;
    r.stint = stint;
    r.AB = ab;
    r.H = h;
    r.HR = hr;
    r.SO = so;
    return r;
}

}  // namespace

TEST_CASE("parse_batting_csv reads a Lahman row") {
    const auto rows = parse(std::string(kHeader) +
                            "beltrca01,2011,1,NYN,98,353,61,102,30,2,15,66,3,0,52,61,8,4,0,4,7\n");
    REQUIRE(rows.size() == 1);
    const auto& r = rows[0];
    CHECK(r.player_id == "beltrca01");
    CHECK(r.year == 2011);
    CHECK(r.stint == 1);
    CHECK(r.AB == 353);
    CHECK(r.H == 102);
    CHECK(r.HR == 15);
    CHECK(r.BB == 52);
    CHECK(r.SO == 61);
    CHECK(r.HBP == 4);
    CHECK(r.SH == 0);
    CHECK(r.SF == 4);
}

TEST_CASE("empty count fields read as zero") {
    const auto rows = parse(std::string(kHeader) + "oldguy01,1901,1,BOS,10,100,5,25,3,1,1,8,0,,9,12,,,,,\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].HBP == 0);
    CHECK(rows[0].SF == 0);
    CHECK(rows[0].SH == 0);
    CHECK(rows[0].SO == 12);
}

TEST_CASE("column order is taken from the header") {
    const auto rows = parse("SO,HR,H,AB,stint,yearID,playerID,BB,HBP,SF,SH\n10,2,30,100,1,2000,x,5,1,0,0\r\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].AB == 100);
    CHECK(rows[0].SO == 10);
    CHECK(rows[0].player_id == "x");
}

TEST_CASE("missing column is a schema error naming it") {
    try {
        parse("playerID,yearID,stint,AB,H,HR,BB,HBP,SF,SH\nx,2000,1,1,0,0,0,0,0,0\n");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.column() == "SO");
        CHECK(std::string(e.what()).find("SO") != std::string::npos);
    }
}

TEST_CASE("non-numeric count is a parse error with the line number") {
    try {
        parse(std::string(kHeader) + "a,2000,1,T,1,10,0,3,0,0,0,0,0,0,0,1,0,0,0,0,0\n" +
              "b,2000,1,T,1,ten,0,3,0,0,0,0,0,0,0,1,0,0,0,0,0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse(std::string(kHeader) + "a,2000,1,T,1,-4,0,3,0,0,0,0,0,0,0,1,0,0,0,0,0\n"),
                    ParseError);
}

TEST_CASE("quoted fields are handled") {
    const auto rows = parse("playerID,yearID,stint,AB,H,HR,SO,BB,HBP,SF,SH\n\"smith,jr\",1999,1,\"120\",30,2,20,5,0,0,0\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].player_id == "smith,jr");
    CHECK(rows[0].AB == 120);
}

TEST_CASE("aggregate_stints sums within player-season") {
    const std::vector<BattingRow> rows{row("a", 2011, 1, 100, 30), row("a", 2011, 2, 50, 10),
                                       row("a", 2012, 1, 80, 20), row("b", 2011, 1, 40, 9)};
    const auto seasons = aggregate_stints(std::span<const BattingRow>(rows));
    REQUIRE(seasons.size() == 3);
    CHECK(seasons[0].player_id == "a");
    CHECK(seasons[0].year == 2011);
    CHECK(seasons[0].AB == 150);
    CHECK(seasons[0].H == 40);
    CHECK(seasons[1].player_id == "b");
    CHECK(seasons[2].year == 2012);
    CHECK(seasons[2].AB == 80);
}

TEST_CASE("aggregate_stints leaves a single stint unchanged") {
    BattingRow r = row("solo", 2005, 1, 321, 99, 12, 70);
    r.BB = 30;
    r.HBP = 3;
    r.SF = 2;
    r.SH = 1;
    const auto seasons = aggregate_stints(std::span<const BattingRow>(&r, 1));
    REQUIRE(seasons.size() == 1);
    const auto& s = seasons[0];
    CHECK(s.AB == 321);
    CHECK(s.H == 99);
    CHECK(s.HR == 12);
    CHECK(s.SO == 70);
    CHECK(s.BB == 30);
    CHECK(s.HBP == 3);
    CHECK(s.SF == 2);
    CHECK(s.SH == 1);
}

TEST_CASE("aggregate_stints rejects impossible totals") {
    const std::vector<BattingRow> rows{row("a", 2011, 1, 100, 100), row("a", 2011, 2, 50, 51)};
    CHECK_THROWS_AS(aggregate_stints(std::span<const BattingRow>(rows)), DataIntegrityError);
    const std::vector<BattingRow> too_many_so{row("c", 2011, 1, 100, 30, 0, 71)};
    CHECK_THROWS_AS(aggregate_stints(std::span<const BattingRow>(too_many_so)), DataIntegrityError);
}

TEST_CASE("aggregate_stints is order independent") {
    std::vector<BattingRow> rows;
    std::mt19937 rng(7);
    for (int i = 0; i < 60; ++i)
        rows.push_back(row("p" + std::to_string(i % 13), 2000 + i % 3, i / 13 + 1, 40 + i, 10 + i % 7,
                           i % 3, i % 11));
    const auto expected = aggregate_stints(std::span<const BattingRow>(rows));
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(rows.begin(), rows.end(), rng);
        const auto got = aggregate_stints(std::span<const BattingRow>(rows));
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].player_id == expected[i].player_id);
            CHECK(got[i].year == expected[i].year);
            CHECK(got[i].AB == expected[i].AB);
            CHECK(got[i].H == expected[i].H);
            CHECK(got[i].SO == expected[i].SO);
        }
    }
}

TEST_CASE("derive_batting_components: Beltran 2011") {
    PlayerSeasonBatting b{.player_id = "beltrca01", .year = 2011, .AB = 520, .H = 156, .HR = 22, .SO = 88};
    b.BB = 71;
    b.HBP = 4;
    const auto set = derive_batting_components(std::span(&b, 1), 100);
    REQUIRE(set.size() == 1);
    CHECK(set.so[0].successes == 88);
    CHECK(set.so[0].opportunities == 520);
    CHECK(set.hr[0].successes == 22);
    CHECK(set.hr[0].opportunities == 432);
    CHECK(set.hip[0].successes == 134);
    CHECK(set.hip[0].opportunities == 410);
    CHECK(set.bb[0].successes == 75);
    CHECK(set.bb[0].opportunities == 595);
}

TEST_CASE("derive_batting_components applies the at-bat threshold") {
    const std::vector<PlayerSeasonBatting> seasons{
        {.player_id = "short", .year = 2011, .AB = 99, .H = 20},
        {.player_id = "ok", .year = 2011, .AB = 100, .H = 20}};
    const auto set = derive_batting_components(seasons, 100);
    REQUIRE(set.size() == 1);
    for (auto c : kAllComponents) {
        REQUIRE(set[c].size() == 1);
        CHECK(set[c][0].player_id == "ok");
    }
    CHECK_THROWS_AS(derive_batting_components(seasons, 0), DomainError);
}

TEST_CASE("zero-opportunity components are kept") {
    const PlayerSeasonBatting b{.player_id = "k", .year = 2011, .AB = 10, .H = 0, .HR = 0, .SO = 10};
    const auto set = derive_batting_components(std::span(&b, 1), 1);
    REQUIRE(set.size() == 1);
    CHECK(set.hr[0].opportunities == 0);
    CHECK(set.hip[0].opportunities == 0);
}

TEST_CASE("batting opportunity chain telescopes") {
    std::mt19937 rng(11);
    std::vector<PlayerSeasonBatting> seasons;
    for (int i = 0; i < 300; ++i) {
        PlayerSeasonBatting s;
        s.player_id = "p" + std::to_string(i);
        s.AB = std::uniform_int_distribution<Count>(1, 700)(rng);
        s.H = std::uniform_int_distribution<Count>(0, s.AB)(rng);
        s.HR = std::uniform_int_distribution<Count>(0, s.H)(rng);
        s.SO = std::uniform_int_distribution<Count>(0, s.AB - s.H)(rng);
        s.BB = std::uniform_int_distribution<Count>(0, 100)(rng);
        validate(s);
        seasons.push_back(s);
    }
    const auto set = derive_batting_components(seasons, 1);
    REQUIRE(set.size() == seasons.size());
    for (std::size_t i = 0; i < seasons.size(); ++i) {
        const auto& s = seasons[i];
        CHECK(set.so[i].opportunities == s.AB);
        CHECK(set.hr[i].opportunities == set.so[i].opportunities - set.so[i].successes);
        CHECK(set.hip[i].opportunities == set.hr[i].opportunities - set.hr[i].successes);
        const Count out_in_play = s.AB - s.SO - s.H;
        CHECK(set.so[i].successes + set.hr[i].successes + set.hip[i].successes + out_in_play == s.AB);
    }
}

TEST_CASE("derive_pitching_components follows the plate-appearance chain") {
    PlayerSeasonPitching p{.player_id = "ace", .year = 2011, .BFP = 1000, .IPouts = 700,
                           .H = 230, .HR = 22, .SO = 200, .BB = 70, .HBP = 10};
    const auto set = derive_pitching_components(std::span(&p, 1), 300);
    REQUIRE(set.size() == 1);
    CHECK(set.bb[0].successes == 80);
    CHECK(set.bb[0].opportunities == 1000);
    CHECK(set.so[0].successes == 200);
    CHECK(set.so[0].opportunities == 920);
    CHECK(set.hr[0].successes == 22);
    CHECK(set.hr[0].opportunities == 720);
    CHECK(set.hip[0].successes == 208);
    CHECK(set.hip[0].opportunities == 698);
}

TEST_CASE("derive_pitching_components thresholds and integrity") {
    const std::vector<PlayerSeasonPitching> seasons{
        {.player_id = "low", .year = 2011, .BFP = 299, .IPouts = 200, .H = 60},
        {.player_id = "none", .year = 2011, .BFP = 0}};
    CHECK(derive_pitching_components(seasons, 300).size() == 0);

    PlayerSeasonPitching bad{.player_id = "bad", .year = 2011, .BFP = 310, .IPouts = 300,
                             .H = 10, .HR = 1, .SO = 250, .BB = 70, .HBP = 0};
    CHECK_THROWS_AS(derive_pitching_components(std::span(&bad, 1), 300), DataIntegrityError);
}

TEST_CASE("parse_pitching_csv and aggregation") {
    std::istringstream in(
        "playerID,yearID,stint,teamID,W,L,IPouts,H,ER,HR,BB,SO,BAOpp,ERA,IBB,WP,HBP,BK,BFP\n"
        "p1,2011,1,NYA,5,3,300,90,40,10,30,80,.25,3.6,2,1,4,0,420\n"
        "p1,2011,2,BOS,2,1,60,20,9,3,6,15,.25,3.6,0,0,1,0,85\n");
    const auto rows = parse_pitching_csv(in);
    REQUIRE(rows.size() == 2);
    const auto seasons = aggregate_stints(std::span<const PitchingRow>(rows));
    REQUIRE(seasons.size() == 1);
    CHECK(seasons[0].BFP == 505);
    CHECK(seasons[0].IPouts == 360);
    CHECK(seasons[0].HBP == 5);
    CHECK(seasons[0].innings() == doctest::Approx(120.0));

    std::istringstream missing("playerID,yearID,stint,IPouts,H,HR,BB,SO,HBP\n");
    CHECK_THROWS_AS(parse_pitching_csv(missing), SchemaError);
}
