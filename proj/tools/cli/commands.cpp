#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "cshrink/contest.hpp"
#include "cshrink/errors.hpp"
#include "cshrink/ingest.hpp"
#include "cshrink/simulate.hpp"
#include "svg.hpp"
#include "table.hpp"

namespace cshrink::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::optional<std::string> batting, pitching, format, out;
    std::optional<int> year, year_from, year_to;
    std::optional<std::string> component, population, measure;
    std::optional<Count> min_ab, min_bfp;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> player;
    bool overlay = false;
    int n_batters = 400;
    int n_pitchers = 300;
};

RunConfig resolve_config(const Flags& f) {
    RunConfig c = config_from_environment();
    if (f.batting) c.batting_path = *f.batting;
    if (f.pitching) c.pitching_path = *f.pitching;
    if (f.min_ab) c.min_ab = *f.min_ab;
    if (f.min_bfp) c.min_bfp = *f.min_bfp;
    if (f.out) c.out_dir = *f.out;
    if (f.format) c.format = parse_format(*f.format);
    if (f.seed) c.seed = *f.seed;
    c.validate();
    return c;
}

template <typename T>
const T& need(const std::optional<T>& v, const char* flag, const char* command) {
    if (!v) throw UsageError(std::string(command) + " requires " + flag);
    return *v;
}

Population population_of(const Flags& f) {
    return f.population ? *parse_population(*f.population) : Population::Batters;
}

std::pair<int, int> year_range(const Flags& f, const char* command) {
    const auto from = f.year_from ? f.year_from : f.year;
    const int lo = need(from, "--year-from", command);
    const int hi = f.year_to.value_or(lo);
    if (hi < lo) throw UsageError("--year-to must not precede --year-from");
    return {lo, hi};
}

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + std::string(what) + " file " + path);
    return in;
}

// Reads whichever files the command needs and splits them by season,
// keeping only seasons in [from, to].
std::vector<SeasonData> load_seasons(const RunConfig& c, bool batting, bool pitching, int from,
                                     int to) {
    std::vector<PlayerSeasonBatting> b;
    std::vector<PlayerSeasonPitching> p;
    if (batting) {
        if (c.batting_path.empty()) throw UsageError("--batting is required");
        auto in = open_input(c.batting_path, "batting");
        try {
            const auto rows = parse_batting_csv(in);
            b = aggregate_stints(std::span<const BattingRow>(rows));
        } catch (const DataError& e) {
            throw DataError(c.batting_path + ": " + e.what());
        }
    }
    if (pitching) {
        if (c.pitching_path.empty()) throw UsageError("--pitching is required");
        auto in = open_input(c.pitching_path, "pitching");
        try {
            const auto rows = parse_pitching_csv(in);
            p = aggregate_stints(std::span<const PitchingRow>(rows));
        } catch (const DataError& e) {
            throw DataError(c.pitching_path + ": " + e.what());
        }
    }
    auto seasons = split_by_season(b, p);
    std::erase_if(seasons, [&](const SeasonData& s) { return s.year < from || s.year > to; });
    return seasons;
}

const SeasonData& season_or_throw(const std::vector<SeasonData>& seasons, int year) {
    auto it = std::find_if(seasons.begin(), seasons.end(),
                           [&](const SeasonData& s) { return s.year == year; });
    if (it == seasons.end()) throw InsufficientDataError("no records for season " + std::to_string(year));
    return *it;
}

std::string safe_name(const std::string& s) {
    std::string out;
    for (char ch : s)
        out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') ? ch : '_';
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

void report(std::ostream& out, const std::filesystem::path& path) {
    out << "wrote " << path.string() << '\n';
}

std::filesystem::path write_svg(const RunConfig& c, const std::string& name, const std::string& svg) {
    std::filesystem::create_directories(c.out_dir);
    const auto path = c.out_dir / name;
    write_text(path, svg);
    return path;
}

// --- fit ------------------------------------------------------------------

void cmd_fit(const Flags& f, std::ostream& out) {
    const RunConfig c = resolve_config(f);
    const int year = need(f.year, "--year", "fit");
    const Component comp = *parse_component(need(f.component, "--component", "fit"));
    const Population pop = population_of(f);
    const auto seasons = load_seasons(c, pop == Population::Batters, pop == Population::Pitchers,
                                      year, year);
    const auto& s = season_or_throw(seasons, year);
    const auto set = season_components(pop, s.batting, s.pitching, c.eligibility());
    const auto fit = fit_exchangeable(set[comp], c.betabin_options());

    Table t{{"year", "population", "component", "eta_hat", "K_hat", "sd_hat", "converged",
             "at_K_bound", "n_players"},
            {}};
    t.rows.push_back({std::int64_t{year}, std::string(to_string(pop)), std::string(to_string(comp)),
                      fit.eta, fit.K, fit.talent_sd, fit.converged, fit.at_K_bound,
                      static_cast<std::int64_t>(fit.n_players)});
    report(out, write_table(t, c,
                            "fit_" + std::string(to_string(pop)) + "_" + std::string(to_string(comp)) +
                                "_" + std::to_string(year)));
}

// --- estimate ---------------------------------------------------------------

void cmd_estimate(const Flags& f, std::ostream& out) {
    const RunConfig c = resolve_config(f);
    const int year = need(f.year, "--year", "estimate");
    const Population pop = population_of(f);
    const auto seasons = load_seasons(c, pop == Population::Batters, pop == Population::Pitchers,
                                      year, year);
    const auto& s = season_or_throw(seasons, year);

    Table t;
    t.columns = {"player_id"};
    auto add_rate_columns = [&](const char* prefix) {
        for (auto comp : kAllComponents) t.columns.push_back(prefix + std::string(to_string(comp)));
    };
    if (pop == Population::Batters) {
        const auto est = estimate_batting(s.batting, c.min_ab, c.betabin_options());
        t.columns.push_back("AB");
        add_rate_columns("raw_");
        add_rate_columns("p_");
        for (const char* col : {"raw_BA", "raw_OBP", "p_H", "p_OB"}) t.columns.push_back(col);
        for (const auto& e : est.players) {
            std::vector<Cell> row{e.player_id, std::int64_t{e.AB}};
            for (double v : e.raw) row.emplace_back(v);
            for (double v : e.shrunk) row.emplace_back(v);
            for (double v : {e.raw_ba, e.raw_obp, e.p_H, e.p_OB}) row.emplace_back(v);
            t.rows.push_back(std::move(row));
        }
    } else {
        const auto est = estimate_pitching(s.pitching, c.min_bfp, c.betabin_options());
        t.columns.push_back("BFP");
        t.columns.push_back("IP");
        add_rate_columns("raw_");
        add_rate_columns("p_");
        t.columns.push_back("raw_FIP");
        t.columns.push_back("mu_FIP");
        for (const auto& e : est.players) {
            std::vector<Cell> row{e.player_id, std::int64_t{e.BFP}, e.IP};
            for (double v : e.raw) row.emplace_back(v);
            for (double v : e.shrunk) row.emplace_back(v);
            row.emplace_back(e.raw_fip);
            row.emplace_back(e.mu_fip);
            t.rows.push_back(std::move(row));
        }
    }
    report(out, write_table(t, c, "estimates_" + std::string(to_string(pop)) + "_" + std::to_string(year)));
}

// --- contest ----------------------------------------------------------------

void cmd_contest(const Flags& f, std::ostream& out, std::ostream& err) {
    const RunConfig c = resolve_config(f);
    const Measure m = *parse_measure(need(f.measure, "--measure", "contest"));
    const int from = need(f.year_from, "--year-from", "contest");
    const int to = need(f.year_to, "--year-to", "contest");
    if (to <= from) throw UsageError("contest needs --year-to after --year-from");
    const bool fip = m == Measure::FIP;
    const auto seasons = load_seasons(c, !fip, fip, from, to);

    ContestOptions options{c.eligibility(), c.betabin_options(), c.normal_options()};
    Table t{{"train_year", "test_year", "measure", "S_C", "S_I", "improvement", "n_players"}, {}};
    Series points{"improvement", {}, false};
    for (int y = from; y < to; ++y) {
        try {
            const auto r = run_contest(m, season_or_throw(seasons, y), season_or_throw(seasons, y + 1),
                                       options);
            t.rows.push_back({std::int64_t{r.train_year}, std::int64_t{r.test_year},
                              std::string(to_string(m)), r.S_C, r.S_I, r.improvement,
                              static_cast<std::int64_t>(r.n_players)});
            points.points.emplace_back(r.test_year, r.improvement);
        } catch (const DataError& e) {
            err << "skipping " << y << "->" << y + 1 << ": " << e.what() << '\n';
        } catch (const NumericalError& e) {
            err << "skipping " << y << "->" << y + 1 << ": " << e.what() << '\n';
        }
    }
    if (t.rows.empty()) throw InsufficientDataError("no season pair could be scored");

    const std::string stem = "contest_" + std::string(to_string(m)) + "_" + std::to_string(from) +
                             "_" + std::to_string(to);
    report(out, write_table(t, c, stem));
    const Chart chart{"Improvement from component estimates (" + std::string(to_string(m)) + ")",
                      "season predicted", "I = S_I - S_C", {points}, true};
    report(out, write_svg(c, stem + ".svg", render_svg(chart)));
}

// --- history ----------------------------------------------------------------

void cmd_history(const Flags& f, std::ostream& out, std::ostream& err) {
    const RunConfig c = resolve_config(f);
    const Component comp = *parse_component(need(f.component, "--component", "history"));
    const auto [from, to] = year_range(f, "history");
    std::vector<Population> pops;
    if (f.overlay)
        pops = {Population::Batters, Population::Pitchers};
    else
        pops = {population_of(f)};
    const bool batting = std::count(pops.begin(), pops.end(), Population::Batters) > 0;
    const bool pitching = std::count(pops.begin(), pops.end(), Population::Pitchers) > 0;
    const auto seasons = load_seasons(c, batting, pitching, from, to);
    if (seasons.empty())
        throw InsufficientDataError("no records between " + std::to_string(from) + " and " +
                                    std::to_string(to));

    Table t{{"year", "population", "component", "eta_hat", "K_hat", "sd_hat", "converged",
             "at_K_bound", "n_players"},
            {}};
    std::vector<Series> mean_series, sd_series;
    for (auto pop : pops) {
        const auto h = history(seasons, comp, pop, c.eligibility(), c.betabin_options());
        for (const auto& fail : h.failures)
            err << to_string(pop) << " " << fail.year << ": fit failed: " << fail.message << '\n';
        Series mean{std::string(to_string(pop)), {}}, sd{std::string(to_string(pop)), {}};
        for (const auto& p : h.points) {
            t.rows.push_back({std::int64_t{p.year}, std::string(to_string(pop)),
                              std::string(to_string(comp)), p.eta_hat, p.K_hat, p.sd_hat,
                              p.converged, p.at_K_bound, static_cast<std::int64_t>(p.n_players)});
            mean.points.emplace_back(p.year, p.eta_hat);
            sd.points.emplace_back(p.year, p.sd_hat);
        }
        mean_series.push_back(std::move(mean));
        sd_series.push_back(std::move(sd));
    }
    if (t.rows.empty()) throw InsufficientDataError("no season could be fit");

    const std::string who = f.overlay ? "overlay" : std::string(to_string(pops.front()));
    const std::string stem = "history_" + who + "_" + std::string(to_string(comp)) + "_" +
                             std::to_string(from) + "_" + std::to_string(to);
    report(out, write_table(t, c, stem));
    const std::string rate = lower(to_string(comp)) + " rate";
    report(out, write_svg(c, stem + "_mean.svg",
                          render_svg({"Mean " + rate + " by season", "season", "eta_hat",
                                      mean_series, false})));
    report(out, write_svg(c, stem + "_sd.svg",
                          render_svg({"Talent SD of " + rate + " by season", "season", "sd_hat",
                                      sd_series, false})));
}

// --- trajectory -------------------------------------------------------------

void cmd_trajectory(const Flags& f, std::ostream& out, std::ostream& err) {
    const RunConfig c = resolve_config(f);
    const std::string& player = need(f.player, "--player", "trajectory");
    const Population pop = population_of(f);
    const auto [from, to] = year_range(f, "trajectory");
    const bool batters = pop == Population::Batters;
    auto seasons = load_seasons(c, batters, !batters, from, to);
    const auto elig = c.eligibility();

    // Only seasons in which the player is eligible need fits.
    bool seen = false;
    std::erase_if(seasons, [&](const SeasonData& s) {
        if (batters) {
            auto it = std::find_if(s.batting.begin(), s.batting.end(),
                                   [&](const auto& r) { return r.player_id == player; });
            seen |= it != s.batting.end();
            return it == s.batting.end() || it->AB < elig.min_ab;
        }
        auto it = std::find_if(s.pitching.begin(), s.pitching.end(),
                               [&](const auto& r) { return r.player_id == player; });
        seen |= it != s.pitching.end();
        return it == s.pitching.end() || it->BFP < elig.min_bfp;
    });
    if (!seen) throw DataError("unknown player " + player + " among " + std::string(to_string(pop)));
    if (seasons.empty())
        throw InsufficientDataError("player " + player + " has no eligible season between " +
                                    std::to_string(from) + " and " + std::to_string(to));

    std::vector<SeasonFailure> failures;
    const auto fits = fit_all_seasons(seasons, pop, elig, c.betabin_options(), &failures);
    for (const auto& fail : failures) {
        err << "skipping season " << fail.year << ": fit failed: " << fail.message << '\n';
        std::erase_if(seasons, [&](const SeasonData& s) { return s.year == fail.year; });
    }
    const auto points = trajectory(player, seasons, fits, pop, elig);

    Table t{{"player_id", "year", "component", "raw_rate", "z"}, {}};
    std::vector<Chart> panels;
    for (auto comp : {Component::BB, Component::SO, Component::HR, Component::HIP})
        panels.push_back({std::string(to_string(comp)), "season", "z", {{player, {}}}, true});
    auto panel_of = [](Component comp) {
        switch (comp) {
            case Component::BB: return 0;
            case Component::SO: return 1;
            case Component::HR: return 2;
            case Component::HIP: return 3;
        }
        return 0;
    };
    for (const auto& p : points) {
        t.rows.push_back({p.player_id, std::int64_t{p.year}, std::string(to_string(p.component)),
                          p.raw_rate, p.z});
        panels[panel_of(p.component)].series[0].points.emplace_back(p.year, p.z);
    }

    const std::string stem = "trajectory_" + safe_name(player) + "_" + std::string(to_string(pop)) +
                             "_" + std::to_string(from) + "_" + std::to_string(to);
    report(out, write_table(t, c, stem));
    report(out, write_svg(c, stem + ".svg",
                          render_panels("Standardized residuals: " + player, panels, 2)));
}

// --- simulate ---------------------------------------------------------------

void cmd_simulate(const Flags& f, std::ostream& out) {
    const RunConfig c = resolve_config(f);
    SimulationOptions opt;
    opt.year_from = f.year_from.value_or(f.year.value_or(2000));
    opt.year_to = f.year_to.value_or(f.year ? *f.year : opt.year_from + 1);
    if (opt.year_to < opt.year_from) throw UsageError("--year-to must not precede --year-from");
    if (f.n_batters < 0 || f.n_pitchers < 0) throw UsageError("player counts must be nonnegative");
    opt.n_batters = f.n_batters;
    opt.n_pitchers = f.n_pitchers;
    opt.seed = c.seed;
    const auto league = simulate_league(opt);

    std::string batting = "playerID,yearID,stint,AB,H,HR,SO,BB,HBP,SF,SH\n";
    for (const auto& r : league.batting)
        batting += r.player_id + "," + std::to_string(r.year) + "," + std::to_string(r.stint) + "," +
                   std::to_string(r.AB) + "," + std::to_string(r.H) + "," + std::to_string(r.HR) +
                   "," + std::to_string(r.SO) + "," + std::to_string(r.BB) + "," +
                   std::to_string(r.HBP) + "," + std::to_string(r.SF) + "," + std::to_string(r.SH) +
                   "\n";
    std::string pitching = "playerID,yearID,stint,BFP,IPouts,H,HR,SO,BB,HBP\n";
    for (const auto& r : league.pitching)
        pitching += r.player_id + "," + std::to_string(r.year) + "," + std::to_string(r.stint) +
                    "," + std::to_string(r.BFP) + "," + std::to_string(r.IPouts) + "," +
                    std::to_string(r.H) + "," + std::to_string(r.HR) + "," + std::to_string(r.SO) +
                    "," + std::to_string(r.BB) + "," + std::to_string(r.HBP) + "\n";

    std::filesystem::create_directories(c.out_dir);
    write_text(c.out_dir / "Batting.csv", batting);
    report(out, c.out_dir / "Batting.csv");
    write_text(c.out_dir / "Pitching.csv", pitching);
    report(out, c.out_dir / "Pitching.csv");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Component shrinkage estimates of hitting and pitching ability",
                 "component-shrink"};
    app.require_subcommand(1);
    Flags f;

    app.add_option("--batting", f.batting, "Batting CSV (Lahman layout)");
    app.add_option("--pitching", f.pitching, "Pitching CSV (Lahman layout)");
    app.add_option("--year", f.year, "Season");
    app.add_option("--year-from", f.year_from, "First season of a range");
    app.add_option("--year-to", f.year_to, "Last season of a range");
    app.add_option("--component", f.component, "Component")
        ->check(CLI::IsMember({"SO", "HR", "HIP", "BB"}));
    app.add_option("--population", f.population, "Population")
        ->check(CLI::IsMember({"batters", "pitchers"}));
    app.add_option("--measure", f.measure, "Contest measure")
        ->check(CLI::IsMember({"BA", "OBP", "FIP"}));
    app.add_option("--min-ab", f.min_ab, "Minimum at-bats for batter eligibility");
    app.add_option("--min-bfp", f.min_bfp, "Minimum batters faced for pitcher eligibility");
    app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", f.out, "Output directory");
    app.add_option("--seed", f.seed, "Random seed");

    auto* fit = app.add_subcommand("fit", "Fit one exchangeable component model");
    auto* estimate = app.add_subcommand("estimate", "Per-player component and composed estimates");
    auto* contest = app.add_subcommand("contest", "Season-to-season prediction contests");
    auto* hist = app.add_subcommand("history", "Talent-curve parameters across seasons");
    hist->add_flag("--overlay", f.overlay, "Plot batters and pitchers together");
    auto* traj = app.add_subcommand("trajectory", "Standardized residuals for one player");
    traj->add_option("--player", f.player, "Player id")->required();
    auto* sim = app.add_subcommand("simulate", "Write a synthetic league in Lahman layout");
    sim->add_option("--n-batters", f.n_batters, "Number of batters");
    sim->add_option("--n-pitchers", f.n_pitchers, "Number of pitchers");
    for (auto* sub : {fit, estimate, contest, hist, traj, sim}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (fit->parsed()) cmd_fit(f, out);
        else if (estimate->parsed()) cmd_estimate(f, out);
        else if (contest->parsed()) cmd_contest(f, out, err);
        else if (hist->parsed()) cmd_history(f, out, err);
        else if (traj->parsed()) cmd_trajectory(f, out, err);
        else if (sim->parsed()) cmd_simulate(f, out);
        return 0;
    } catch (const UsageError& e) {
        err << "component-shrink: " << e.what() << '\n';
        return 1;
    } catch (const ConfigurationError& e) {
        err << "component-shrink: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        err << "component-shrink: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "component-shrink: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "component-shrink: numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "component-shrink: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace cshrink::cli
