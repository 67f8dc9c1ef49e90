#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "twsec/montecarlo.hpp"

using namespace twsec;
using namespace twsec::montecarlo;

namespace {

CampaignConfig small_cfg(long trials = 500, std::uint64_t seed = 11) {
  CampaignConfig cfg;
  cfg.params.elements = 8;
  cfg.params.pairs = 3;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

bool records_equal(const std::vector<TrialRecord>& a, const std::vector<TrialRecord>& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(TrialRecord)) == 0;
}

}  // namespace

TEST_CASE("run_trials is a pure function of (config, scheme)") {
  const auto cfg = small_cfg();
  const auto r1 = run_trials(cfg, schemes::Scheme::proposed);
  const auto r2 = run_trials(cfg, schemes::Scheme::proposed);
  CHECK(records_equal(r1, r2));
}

TEST_CASE("worker count never changes the records") {
  auto cfg = small_cfg(1000);
  cfg.workers = 1;
  const auto r1 = run_trials(cfg, schemes::Scheme::proposed);
  cfg.workers = 3;
  const auto r3 = run_trials(cfg, schemes::Scheme::proposed);
  cfg.workers = 8;
  const auto r8 = run_trials(cfg, schemes::Scheme::proposed);
  CHECK(records_equal(r1, r3));
  CHECK(records_equal(r1, r8));
}

TEST_CASE("adding trials preserves earlier draws") {
  auto cfg = small_cfg(100);
  const auto r100 = run_trials(cfg, schemes::Scheme::proposed);
  cfg.trials = 250;
  const auto r250 = run_trials(cfg, schemes::Scheme::proposed);
  for (int t = 0; t < 100; ++t) {
    CHECK(r100[t].rate_s1 == r250[t].rate_s1);
    CHECK(r100[t].log_eve2 == r250[t].log_eve2);
  }
}

TEST_CASE("random-disc mode also stays deterministic") {
  auto cfg = small_cfg(300);
  cfg.geometry_mode = GeometryMode::random_disc;
  cfg.workers = 1;
  const auto a = run_trials(cfg, schemes::Scheme::oneway_jam);
  cfg.workers = 4;
  const auto b = run_trials(cfg, schemes::Scheme::oneway_jam);
  CHECK(records_equal(a, b));
}

TEST_CASE("estimates: single-trial convention and nonnegativity") {
  auto cfg = small_cfg(1);
  const auto rec = run_trials(cfg, schemes::Scheme::proposed);
  const auto est = estimates_from_records(rec, schemes::Scheme::proposed,
                                          Estimator::mean_positive_rate, model::LogBase::nats);
  REQUIRE(est.size() == 3);
  CHECK(est[0].ci95_halfwidth == 0.0);
  CHECK(est[2].mean == doctest::Approx(rec[0].rate_s1 + rec[0].rate_s2));
  for (const auto& e : est) CHECK(e.mean >= 0.0);
}

TEST_CASE("jensen bound sits below the positive-part mean") {
  auto cfg = small_cfg(4000, 17);
  const auto rec = run_trials(cfg, schemes::Scheme::proposed);
  const auto mp = estimates_from_records(rec, schemes::Scheme::proposed,
                                         Estimator::mean_positive_rate, model::LogBase::nats);
  const auto jb = estimates_from_records(rec, schemes::Scheme::proposed,
                                         Estimator::jensen_bound, model::LogBase::nats);
  CHECK(jb[2].mean <= mp[2].mean + 3.0 * (jb[2].ci95_halfwidth + mp[2].ci95_halfwidth));
}

TEST_CASE("run_campaign aggregates schemes in order") {
  auto cfg = small_cfg(50);
  cfg.schemes = {schemes::Scheme::proposed, schemes::Scheme::hd_relay};
  const auto est = run_campaign(cfg);
  REQUIRE(est.size() == 6);
  CHECK(est[0].scheme == schemes::Scheme::proposed);
  CHECK(est[3].scheme == schemes::Scheme::hd_relay);
  CHECK(est[0].trials == 50);
}

TEST_CASE("config validation") {
  auto cfg = small_cfg();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_cfg();
  cfg.schemes.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_cfg();
  cfg.disc_radius_m = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("empirical cdf basics") {
  EmpiricalCdf one(std::vector<double>{1.0});
  CHECK(one(0.999) == 0.0);
  CHECK(one(1.0) == 1.0);
  CHECK(one(2.0) == 1.0);
  EmpiricalCdf four(std::vector<double>{1, 2, 3, 4});
  CHECK(four(2.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("ks_distance reference cases") {
  EmpiricalCdf emp(std::vector<double>{1, 2, 3, 4});
  // a step function against itself scores zero
  CHECK(ks_distance(emp, [&](double x) { return emp(x); }) == doctest::Approx(0.0));
  // single sample at 0 against the constant half
  EmpiricalCdf zero(std::vector<double>{0.0});
  CHECK(ks_distance(zero, [](double) { return 0.5; }) == doctest::Approx(0.5));
}

TEST_CASE("ks_distance against a known distribution") {
  Rng rng(29);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = rng.exponential(1.0);
  EmpiricalCdf emp(std::move(xs));
  const double ks =
      ks_distance(emp, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); });
  CHECK(ks <= 0.01);
}

TEST_CASE("confidence intervals cover a known mean") {
  // repeated small campaigns; the long-run mean comes from one large campaign
  auto big = small_cfg(200000, 1000);
  const auto ref_rec = run_trials(big, schemes::Scheme::proposed);
  const auto ref = estimates_from_records(ref_rec, schemes::Scheme::proposed,
                                          Estimator::mean_positive_rate, model::LogBase::nats);
  const double truth = ref[2].mean;

  int covered = 0;
  const int campaigns = 100;
  for (int c = 0; c < campaigns; ++c) {
    auto cfg = small_cfg(400, 2000 + c);
    const auto rec = run_trials(cfg, schemes::Scheme::proposed);
    const auto est = estimates_from_records(rec, schemes::Scheme::proposed,
                                            Estimator::mean_positive_rate, model::LogBase::nats);
    if (std::fabs(est[2].mean - truth) <= est[2].ci95_halfwidth) ++covered;
  }
  CHECK(covered >= 90);
}
