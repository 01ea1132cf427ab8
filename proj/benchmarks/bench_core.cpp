#include <benchmark/benchmark.h>

#include "regret/display.hpp"
#include "regret/fitting.hpp"
#include "regret/serialize.hpp"
#include "regret/session.hpp"
#include "regret/simulate.hpp"

namespace {

using namespace regret;

Session completed_session(std::uint64_t seed, double noise) {
  GroupSpec spec;
  spec.seed = seed;
  spec.noise_sigma = noise;
  return std::move(simulate_group(spec, [] { return std::string("t"); }).front());
}

void BM_EvalWeightTK(benchmark::State& state) {
  const auto w = WeightingSpec::tversky_kahneman(0.61);
  double p = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_weight(w, p));
    p = p < 0.9 ? p + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_EvalWeightTK);

void BM_NetAdvantage(benchmark::State& state) {
  const QCurve q = QCurve::identity();
  const auto w = WeightingSpec::prelec(0.7);
  const DecisionProblem problem{-0.9, -0.5, 0.45, 100.0};
  for (auto _ : state) benchmark::DoNotOptimize(net_advantage(problem, w, q));
}
BENCHMARK(BM_NetAdvantage);

void BM_FormatTable2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(format_table2("csv"));
}
BENCHMARK(BM_FormatTable2);

void BM_FitModel(benchmark::State& state) {
  const Session s = completed_session(7, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(fit_model(s.training(), s.p_stars()));
}
BENCHMARK(BM_FitModel)->Unit(benchmark::kMillisecond);

void BM_FullSyntheticSession(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(completed_session(seed++, 0.05));
}
BENCHMARK(BM_FullSyntheticSession)->Unit(benchmark::kMillisecond);

void BM_ReplaySession(benchmark::State& state) {
  const Session s = completed_session(7, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(Session::replay(s.events()));
}
BENCHMARK(BM_ReplaySession)->Unit(benchmark::kMillisecond);

void BM_LogLineRoundTrip(benchmark::State& state) {
  const Session s = completed_session(7, 0.0);
  const Event& e = s.events()[1];
  for (auto _ : state) benchmark::DoNotOptimize(parse_log_line(to_log_line(e)));
}
BENCHMARK(BM_LogLineRoundTrip);

}  // namespace

BENCHMARK_MAIN();
