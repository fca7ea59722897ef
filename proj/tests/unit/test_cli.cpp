#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "cshrink/contest.hpp"
#include "cshrink/ingest.hpp"
#include "doctest.h"
#include "table.hpp"

namespace fs = std::filesystem;
using namespace cshrink;

namespace {

struct Outcome {
    int code = 0;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "component-shrink");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

// Rows of a CSV file without quoting, as column -> text.
std::vector<std::map<std::string, std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };
    const auto header = split(line);
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        const auto cells = split(line);
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells.at(i);
        rows.push_back(row);
    }
    return rows;
}

class Workspace {
public:
    Workspace() {
        dir_ = fs::temp_directory_path() / ("cshrink_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        const auto r = invoke({"simulate", "--year-from", "2000", "--year-to", "2002", "--n-batters",
                            "120", "--n-pitchers", "90", "--seed", "11", "--out", dir_.string()});
        REQUIRE(r.code == 0);
    }
    ~Workspace() { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }
    std::string batting() const { return path("Batting.csv").string(); }
    std::string pitching() const { return path("Pitching.csv").string(); }

private:
    fs::path dir_;
};

std::vector<SeasonData> load(const Workspace& w) {
    std::ifstream b(w.batting()), p(w.pitching());
    const auto br = parse_batting_csv(b);
    const auto pr = parse_pitching_csv(p);
    return split_by_season(aggregate_stints(std::span<const BattingRow>(br)),
                           aggregate_stints(std::span<const PitchingRow>(pr)));
}

}  // namespace

TEST_CASE("format_number keeps six significant digits") {
    CHECK(cli::format_number(0.2034567891) == "0.203457");
    CHECK(cli::format_number(40.6) == "40.6");
    CHECK(cli::format_number(NAN) == "NA");
}

TEST_CASE("fit on a two-player file matches the library") {
    const fs::path dir = fs::temp_directory_path() / ("cshrink_toy_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "toy.csv");
        f << "playerID,yearID,stint,AB,H,HR,SO,BB,HBP,SF,SH\n"
             "aaa01,2011,1,500,140,20,90,50,5,3,1\n"
             "bbb01,2011,1,420,100,8,120,30,2,1,0\n";
    }
    const auto r = invoke({"fit", "--batting", (dir / "toy.csv").string(), "--year", "2011",
                        "--component", "SO", "--out", (dir / "o").string()});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(dir / "o" / "fit_batters_SO_2011.csv");
    REQUIRE(rows.size() == 1);
    const std::vector<ComponentObservation> obs{{"aaa01", 90, 500}, {"bbb01", 120, 420}};
    const auto fit = fit_exchangeable(obs);
    CHECK(std::stod(rows[0].at("eta_hat")) == doctest::Approx(fit.eta).epsilon(1e-5));
    CHECK(std::stod(rows[0].at("K_hat")) == doctest::Approx(fit.K).epsilon(1e-5));
    CHECK(rows[0].at("n_players") == "2");
    fs::remove_all(dir);
}

TEST_CASE("missing input file names the path") {
    const auto r = invoke({"fit", "--batting", "/nonexistent/Batting.csv", "--year", "2000",
                        "--component", "SO"});
    CHECK(r.code == 2);
    CHECK(r.err.find("/nonexistent/Batting.csv") != std::string::npos);
}

TEST_CASE("usage errors exit with status 1") {
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"fit", "--component", "XX"}).code == 1);
    CHECK(invoke({"fit", "--batting", "x.csv", "--component", "SO"}).code == 1);
    CHECK(invoke({"contest", "--measure", "BA", "--batting", "x.csv", "--year-from", "2001",
               "--year-to", "2001"})
              .code == 1);
    CHECK(invoke({"fit", "--year", "2000", "--component", "SO", "--batting", "x.csv", "--min-ab",
               "0"})
              .code == 1);
}

TEST_CASE("estimate: one row per eligible player, CSV and JSON agree") {
    Workspace w;
    const auto csv = invoke({"estimate", "--batting", w.batting(), "--year", "2001", "--out",
                          w.path("o").string()});
    REQUIRE(csv.code == 0);
    const auto json = invoke({"estimate", "--batting", w.batting(), "--year", "2001", "--format",
                           "json", "--out", w.path("o").string()});
    REQUIRE(json.code == 0);

    const auto seasons = load(w);
    std::size_t eligible = 0;
    for (const auto& s : seasons[1].batting) eligible += s.AB >= 100;

    const auto rows = read_csv(w.path("o/estimates_batters_2001.csv"));
    CHECK(rows.size() == eligible);
    const auto parsed = nlohmann::json::parse(slurp(w.path("o/estimates_batters_2001.json")));
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [key, text] : rows[i]) {
            const auto& v = parsed[i].at(key);
            if (v.is_string()) CHECK(v.get<std::string>() == text);
            else if (v.is_null()) CHECK(text == "NA");
            else CHECK(v.get<double>() == std::stod(text));
        }
    }

    const auto pit = invoke({"estimate", "--pitching", w.pitching(), "--population", "pitchers",
                          "--year", "2001", "--out", w.path("o").string()});
    REQUIRE(pit.code == 0);
    const auto prow = read_csv(w.path("o/estimates_pitchers_2001.csv"));
    std::size_t pitchers = 0;
    for (const auto& s : seasons[1].pitching) pitchers += s.BFP >= 300;
    CHECK(prow.size() == pitchers);
    CHECK(prow.front().count("mu_FIP") == 1);
}

TEST_CASE("outputs are byte-for-byte reproducible") {
    Workspace w;
    for (const char* dir : {"a", "b"}) {
        REQUIRE(invoke({"history", "--component", "HR", "--batting", w.batting(), "--year-from",
                     "2000", "--year-to", "2002", "--out", w.path(dir).string()})
                    .code == 0);
    }
    for (const char* name : {"history_batters_HR_2000_2002.csv", "history_batters_HR_2000_2002_mean.svg",
                             "history_batters_HR_2000_2002_sd.svg"})
        CHECK(slurp(w.path("a") / name) == slurp(w.path("b") / name));
}

TEST_CASE("contest: single pair matches run_contest, FIP uses pitching data") {
    Workspace w;
    const auto r = invoke({"contest", "--measure", "OBP", "--batting", w.batting(), "--year-from",
                        "2000", "--year-to", "2001", "--out", w.path("o").string()});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(w.path("o/contest_OBP_2000_2001.csv"));
    REQUIRE(rows.size() == 1);
    const auto seasons = load(w);
    const auto direct = run_contest(Measure::OBP, seasons[0], seasons[1]);
    CHECK(std::stod(rows[0].at("S_C")) == doctest::Approx(direct.S_C).epsilon(1e-5));
    CHECK(std::stod(rows[0].at("S_I")) == doctest::Approx(direct.S_I).epsilon(1e-5));
    CHECK(std::stoul(rows[0].at("n_players")) == direct.n_players);
    const auto svg = slurp(w.path("o/contest_OBP_2000_2001.svg"));
    CHECK(count(svg, "class=\"point\"") == 1);
    CHECK(count(svg, "class=\"zero\"") == 1);

    const auto fip = invoke({"contest", "--measure", "FIP", "--pitching", w.pitching(), "--year-from",
                          "2000", "--year-to", "2002", "--out", w.path("o").string()});
    REQUIRE(fip.code == 0);
    const auto frows = read_csv(w.path("o/contest_FIP_2000_2002.csv"));
    CHECK(frows.size() == 2);
    const auto fdirect = run_contest(Measure::FIP, seasons[1], seasons[2]);
    CHECK(std::stod(frows[1].at("improvement")) == doctest::Approx(fdirect.improvement).epsilon(1e-5));

    // FIP without pitching data is a usage error even when batting is given.
    CHECK(invoke({"contest", "--measure", "FIP", "--batting", w.batting(), "--year-from", "2000",
               "--year-to", "2001"})
              .code == 1);
}

TEST_CASE("history: one season, overlay and sd replay") {
    Workspace w;
    REQUIRE(invoke({"history", "--component", "SO", "--batting", w.batting(), "--year-from", "2001",
                 "--year-to", "2001", "--out", w.path("o").string()})
                .code == 0);
    CHECK(read_csv(w.path("o/history_batters_SO_2001_2001.csv")).size() == 1);

    REQUIRE(invoke({"history", "--overlay", "--component", "SO", "--batting", w.batting(),
                 "--pitching", w.pitching(), "--year-from", "2000", "--year-to", "2002", "--out",
                 w.path("o").string()})
                .code == 0);
    const auto rows = read_csv(w.path("o/history_overlay_SO_2000_2002.csv"));
    CHECK(rows.size() == 6);
    for (const auto& row : rows) {
        const double eta = std::stod(row.at("eta_hat")), K = std::stod(row.at("K_hat"));
        CHECK(std::stod(row.at("sd_hat")) ==
              doctest::Approx(std::sqrt(eta * (1 - eta) / (K + 1))).epsilon(1e-4));
    }
    for (const char* suffix : {"_mean.svg", "_sd.svg"}) {
        const auto svg = slurp(w.path(std::string("o/history_overlay_SO_2000_2002") + suffix));
        CHECK(count(svg, "class=\"series\"") == 2);
        CHECK(count(svg, "data-name=\"batters\"") == 1);
        CHECK(count(svg, "data-name=\"pitchers\"") == 1);
    }
}

TEST_CASE("trajectory: panels match rows, unknown player fails") {
    Workspace w;
    REQUIRE(invoke({"trajectory", "--player", "bsim00003", "--batting", w.batting(), "--year-from",
                 "2000", "--year-to", "2002", "--out", w.path("o").string()})
                .code == 0);
    const auto rows = read_csv(w.path("o/trajectory_bsim00003_batters_2000_2002.csv"));
    CHECK(rows.size() == 12);
    const auto svg = slurp(w.path("o/trajectory_bsim00003_batters_2000_2002.svg"));
    CHECK(count(svg, "class=\"point\"") == rows.size());
    CHECK(count(svg, "class=\"zero\"") == 4);
    CHECK(rows[0].at("component") == "BB");
    CHECK(rows[1].at("component") == "SO");
    CHECK(rows[2].at("component") == "HR");
    CHECK(rows[3].at("component") == "HIP");

    const auto missing = invoke({"trajectory", "--player", "zzz99", "--batting", w.batting(),
                              "--year-from", "2000", "--year-to", "2002"});
    CHECK(missing.code != 0);
    CHECK(missing.err.find("zzz99") != std::string::npos);
}

TEST_CASE("trajectory: league-average player has zero residuals") {
    const fs::path dir = fs::temp_directory_path() / ("cshrink_avg_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    {
        // Every batter has the same line. The fitted mean then differs from that
        // line only by a term of order n / K^2, far below the residual scale.
        std::ofstream f(dir / "b.csv");
        f << "playerID,yearID,stint,AB,H,HR,SO,BB,HBP,SF,SH\n";
        for (int year : {2000, 2001})
            for (int j = 0; j < 40; ++j)
                f << "p" << j << "," << year << ",1,400,92,16,80,36,4,0,0\n";
    }
    REQUIRE(invoke({"trajectory", "--player", "p2", "--batting", (dir / "b.csv").string(),
                 "--year-from", "2000", "--year-to", "2001", "--out", (dir / "o").string()})
                .code == 0);
    const auto rows = read_csv(dir / "o" / "trajectory_p2_batters_2000_2001.csv");
    CHECK(rows.size() == 8);
    for (const auto& row : rows) CHECK(std::abs(std::stod(row.at("z"))) < 0.01);
    fs::remove_all(dir);
}

TEST_CASE("config file is read from the environment and flags override it") {
    Workspace w;
    const auto cfg = w.path("cfg.json");
    {
        std::ofstream f(cfg);
        f << R"({"batting": ")" << w.batting() << R"(", "min-ab": 100000, "out": ")"
          << w.path("c").string() << R"("})";
    }
    ::setenv(cli::kConfigEnvVar, cfg.c_str(), 1);
    const auto strict = invoke({"fit", "--year", "2000", "--component", "SO"});
    const auto relaxed = invoke({"fit", "--year", "2000", "--component", "SO", "--min-ab", "100"});
    ::setenv(cli::kConfigEnvVar, (w.path("missing.json")).c_str(), 1);
    const auto broken = invoke({"fit", "--year", "2000", "--component", "SO"});
    ::unsetenv(cli::kConfigEnvVar);

    CHECK(strict.code == 2);  // nobody reaches 100000 AB
    CHECK(relaxed.code == 0);
    CHECK(fs::exists(w.path("c/fit_batters_SO_2000.csv")));
    CHECK(broken.code == 1);
}

TEST_CASE("installed binary reports exit status") {
    const std::string cmd = std::string(CSHRINK_CLI_PATH) +
                            " fit --batting /nonexistent.csv --year 2000 --component SO 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 2);
    const int usage = std::system((std::string(CSHRINK_CLI_PATH) + " >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(usage) == 1);
}
