#include <random>
#include <sstream>
#include <vector>

#include <benchmark/benchmark.h>

#include "cshrink/betabin.hpp"
#include "cshrink/contest.hpp"
#include "cshrink/ingest.hpp"
#include "cshrink/normalmodel.hpp"
#include "cshrink/simulate.hpp"

using namespace cshrink;

namespace {

SimulatedLeague league(int batters, int pitchers, int seasons) {
    SimulationOptions opt;
    opt.year_from = 2000;
    opt.year_to = 2000 + seasons - 1;
    opt.n_batters = batters;
    opt.n_pitchers = pitchers;
    opt.min_ab = 100;
    opt.max_ab = 600;
    opt.seed = 42;
    return simulate_league(opt);
}

std::vector<ComponentObservation> strikeouts(int batters) {
    const auto l = league(batters, 0, 1);
    const auto seasons = aggregate_stints(std::span<const BattingRow>(l.batting));
    return derive_batting_components(seasons, 1).so;
}

std::string batting_csv(int batters, int seasons) {
    std::ostringstream out;
    out << "playerID,yearID,stint,AB,H,HR,SO,BB,HBP,SF,SH\n";
    for (const auto& r : league(batters, 0, seasons).batting)
        out << r.player_id << ',' << r.year << ',' << r.stint << ',' << r.AB << ',' << r.H << ','
            << r.HR << ',' << r.SO << ',' << r.BB << ',' << r.HBP << ',' << r.SF << ',' << r.SH
            << '\n';
    return out.str();
}

}  // namespace

static void BM_LogMarginal(benchmark::State& state) {
    const Count n = state.range(0);
    double eta = 0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_marginal(n / 5, n, eta, 40.6));
        eta = eta < 0.3 ? eta + 1e-6 : 0.2;
    }
}
BENCHMARK(BM_LogMarginal)->Arg(10)->Arg(500)->Arg(100000);

static void BM_LogPosterior(benchmark::State& state) {
    const auto obs = strikeouts(static_cast<int>(state.range(0)));
    Theta t{-1.37, 3.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_posterior(obs, t));
        t.log_K += 1e-9;
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogPosterior)->Arg(100)->Arg(600)->Arg(2400);

static void BM_FitExchangeable(benchmark::State& state) {
    const auto obs = strikeouts(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_exchangeable(obs));
}
BENCHMARK(BM_FitExchangeable)->Arg(100)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_FitNormal(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> w(30.0, 230.0);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<NormalObservation> obs;
    for (int j = 0; j < state.range(0); ++j) {
        const double ip = w(rng);
        obs.push_back({"p" + std::to_string(j), 3.8 + 0.5 * z(rng) + 3.0 * z(rng) / std::sqrt(ip), ip});
    }
    for (auto _ : state) benchmark::DoNotOptimize(fit_normal_exchangeable(obs));
}
BENCHMARK(BM_FitNormal)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_Contest(benchmark::State& state) {
    const auto l = league(400, 300, 2);
    const auto seasons = split_by_season(aggregate_stints(std::span<const BattingRow>(l.batting)),
                                         aggregate_stints(std::span<const PitchingRow>(l.pitching)));
    const auto measure = static_cast<Measure>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_contest(measure, seasons[0], seasons[1]));
}
BENCHMARK(BM_Contest)
    ->Arg(static_cast<int>(Measure::BA))
    ->Arg(static_cast<int>(Measure::FIP))
    ->Unit(benchmark::kMillisecond);

static void BM_ParseBatting(benchmark::State& state) {
    const std::string csv = batting_csv(1000, 5);
    for (auto _ : state) {
        std::istringstream in(csv);
        benchmark::DoNotOptimize(parse_batting_csv(in));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(csv.size()));
}
BENCHMARK(BM_ParseBatting)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
