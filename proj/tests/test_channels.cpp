#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "twsec/channels.hpp"
#include "twsec/montecarlo.hpp"

using namespace twsec;
using namespace twsec::channels;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("sample_realization shapes and modes") {
  Rng rng(3);
  const auto r = sample_realization(rng, 1, 1, model::RliMode::deterministic, 0.0);
  CHECK(r.elements == 1);
  CHECK(r.n_pairs == 1);
  CHECK(r.h.size() == 1);
  CHECK(r.h[0].size() == 1);
  CHECK(r.h_e.size() == 1);
  CHECK_FALSE(r.has_rli);

  const auto rs = sample_realization(rng, 4, 3, model::RliMode::sampled, 1e-7);
  CHECK(rs.has_rli);
  CHECK(rs.rli_a.size() == 3);

  CHECK_THROWS_AS(sample_realization(rng, 0, 1, model::RliMode::deterministic, 0.0),
                  std::invalid_argument);
}

TEST_CASE("channel entries are unit-variance circular Gaussian") {
  Rng rng(11);
  const int draws = 100000;
  double p2 = 0.0, p1 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto v = rng.cgauss();
    p2 += std::norm(v);
    p1 += std::abs(v);
  }
  CHECK(p2 / draws == doctest::Approx(1.0).epsilon(0.02));
  // Rayleigh mean sqrt(pi)/2
  CHECK(p1 / draws == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(0.011));
}

TEST_CASE("optimal phases cancel and zeta matches the amplitude identity") {
  {
    const cplx h[] = {cplx{1.0, 0.0}};
    const cplx g[] = {cplx{1.0, 0.0}};
    const auto d = optimal_phases_and_zeta(h, g);
    CHECK(d.phases[0] == doctest::Approx(0.0));
    CHECK(d.zeta == doctest::Approx(1.0));
  }
  {
    const cplx h[] = {cplx{0.0, 1.0}};  // j
    const cplx g[] = {cplx{1.0, 0.0}};
    const auto d = optimal_phases_and_zeta(h, g);
    CHECK(d.phases[0] == doctest::Approx(3.0 * kPi / 2.0));  // -pi/2 mod 2pi
    CHECK(d.zeta == doctest::Approx(1.0).epsilon(1e-12));
  }
  Rng rng(8);
  std::vector<cplx> h(8), g(8);
  for (int rep = 0; rep < 50; ++rep) {
    for (auto& v : h) v = rng.cgauss();
    for (auto& v : g) v = rng.cgauss();
    const auto d = optimal_phases_and_zeta(h, g);
    double s = 0.0;
    for (int k = 0; k < 8; ++k) s += std::abs(h[k]) * std::abs(g[k]);
    CHECK(d.zeta == doctest::Approx(s * s).epsilon(1e-12));
    for (double th : d.phases) {
      CHECK(th >= 0.0);
      CHECK(th < 2.0 * kPi);
    }
    // scheduling statistic is reciprocal
    CHECK(cascade_zeta(h, g) == cascade_zeta(g, h));
  }
  std::vector<cplx> short_g(3);
  CHECK_THROWS_AS(optimal_phases_and_zeta(h, short_g), std::invalid_argument);
}

TEST_CASE("cascade mean: sqrt(zeta)/K approaches pi/4 at K=256") {
  Rng rng(21);
  const int K = 256, draws = 10000;
  std::vector<cplx> h(K), g(K);
  double acc = 0.0;
  for (int i = 0; i < draws; ++i) {
    for (auto& v : h) v = rng.cgauss();
    for (auto& v : g) v = rng.cgauss();
    acc += std::sqrt(cascade_zeta(h, g)) / K;
  }
  CHECK(acc / draws == doctest::Approx(kPi / 4.0).epsilon(0.02));
}

namespace {

model::PathlossSet handmade_pathloss(double irs_ae, double irs_be, double dir_ae, double dir_be) {
  model::PathlossSet pl;
  model::PairPathloss p;
  p.beta_irs_ae = irs_ae;
  p.beta_irs_be = irs_be;
  p.beta_dir_ae = dir_ae;
  p.beta_dir_be = dir_be;
  pl.pairs.push_back(p);
  return pl;
}

}  // namespace

TEST_CASE("eve_effective degenerate cases") {
  // zero reflected path and zero direct coefficient -> phi = 0
  ChannelRealization r;
  r.elements = 2;
  r.n_pairs = 1;
  r.h = {{cplx{1, 0}, cplx{0, 1}}};
  r.g = {{cplx{1, 0}, cplx{1, 0}}};
  r.h_e = {cplx{0, 0}, cplx{0, 0}};
  r.h_ne = {cplx{0.5, -0.25}};
  r.g_ne = {cplx{1, 1}};
  const auto pl = handmade_pathloss(0.3, 0.2, 0.0, 0.1);
  const double phases[] = {0.0, 0.0};
  const auto eff = eve_effective(r, phases, pl, 0);
  CHECK(std::abs(eff.phi) == doctest::Approx(0.0));

  // K = 0 edge: direct path only
  ChannelRealization r0;
  r0.elements = 0;
  r0.n_pairs = 1;
  r0.h = {{}};
  r0.g = {{}};
  r0.h_ne = {cplx{0.5, -0.25}};
  r0.g_ne = {cplx{1, 1}};
  const auto pl0 = handmade_pathloss(0.3, 0.2, 0.09, 0.1);
  const auto eff0 = eve_effective(r0, std::span<const double>{}, pl0, 0);
  CHECK(eff0.phi == std::sqrt(0.09) * r0.h_ne[0]);
  CHECK(eff0.var_phi == doctest::Approx(0.09));

  CHECK_THROWS_AS(eve_effective(r, phases, pl, 5), std::out_of_range);
}

TEST_CASE("eve effective statistics match the Gaussian model at K=32") {
  // default pathloss values at the disc centers
  model::SystemParams sp;
  auto geom = model::fixed_geometry(1, {15, 0}, {15, 20}, {0, 0}, {30, 0});
  const auto pl = model::make_pathloss(geom, sp);
  const int K = 32, draws = 100000;
  Rng rng(5);
  std::vector<double> phi2(draws);
  double se2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto r = sample_realization(rng, K, 1, model::RliMode::deterministic, 0.0);
    const auto d = optimal_phases_and_zeta(r.h[0], r.g[0]);
    const auto eff = eve_effective(r, d.phases, pl, 0);
    phi2[i] = std::norm(eff.phi);
    se2 = eff.var_phi;
  }
  double mean = 0.0;
  for (double v : phi2) mean += v;
  mean /= draws;
  CHECK(mean == doctest::Approx(se2).epsilon(0.05));

  // |phi|^2 is exponential to KS <= 0.03
  montecarlo::EmpiricalCdf emp(std::move(phi2));
  const double ks = montecarlo::ks_distance(
      emp, [&](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x / se2); });
  CHECK(ks <= 0.03);
}
