#include <benchmark/benchmark.h>

#include <cmath>

#include "twsec/analytic.hpp"
#include "twsec/channels.hpp"
#include "twsec/montecarlo.hpp"
#include "twsec/schemes.hpp"
#include "twsec/specfun.hpp"

namespace {

using namespace twsec;

void BM_reg_lower_gamma(benchmark::State& state) {
  double x = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::reg_lower_gamma(51.5, x));
    x = x < 120.0 ? x + 1.0 : 10.0;
  }
}
BENCHMARK(BM_reg_lower_gamma);

void BM_gc_integrate_halfline(benchmark::State& state) {
  const auto rule = specfun::gc_rule(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        specfun::gc_integrate_halfline([](double x) { return std::exp(-x); }, rule));
  }
}
BENCHMARK(BM_gc_integrate_halfline)->Arg(20)->Arg(40);

void BM_theorem1_bounds(benchmark::State& state) {
  model::SystemParams params;
  const auto geom = model::fixed_geometry(params.pairs, {15, 0}, {15, 20}, {0, 0}, {30, 0});
  for (auto _ : state) benchmark::DoNotOptimize(analytic::theorem1_bounds(params, geom));
}
BENCHMARK(BM_theorem1_bounds);

void BM_proposed_trial(benchmark::State& state) {
  model::SystemParams params;
  params.elements = static_cast<int>(state.range(0));
  const auto geom = model::fixed_geometry(params.pairs, {15, 0}, {15, 20}, {0, 0}, {30, 0});
  const auto pl = model::make_pathloss(geom, params);
  const schemes::TrialContext ctx{params, geom, pl};
  Rng rng(7);
  for (auto _ : state) {
    const auto real = channels::sample_realization(rng, params.elements, params.pairs,
                                                   params.rli_mode, params.rli_w());
    benchmark::DoNotOptimize(schemes::proposed_trial(real, ctx));
  }
}
BENCHMARK(BM_proposed_trial)->Arg(32)->Arg(256);

void BM_campaign_1k(benchmark::State& state) {
  montecarlo::CampaignConfig cfg;
  cfg.trials = 1000;
  cfg.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(montecarlo::run_trials(cfg, schemes::Scheme::proposed));
  }
}
BENCHMARK(BM_campaign_1k)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
