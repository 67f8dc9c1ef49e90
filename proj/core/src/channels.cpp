#include "twsec/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace twsec::channels {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

ChannelRealization sample_realization(Rng& rng, int elements, int n_pairs,
                                      model::RliMode rli_mode, double rli_variance_w) {
  if (elements < 1 || n_pairs < 1)
    throw std::invalid_argument("sample_realization: K >= 1 and N >= 1 required");
  ChannelRealization r;
  r.elements = elements;
  r.n_pairs = n_pairs;
  r.h.resize(n_pairs);
  r.g.resize(n_pairs);
  r.h_ne.resize(n_pairs);
  r.g_ne.resize(n_pairs);
  for (int n = 0; n < n_pairs; ++n) {
    r.h[n].resize(elements);
    r.g[n].resize(elements);
    for (int k = 0; k < elements; ++k) r.h[n][k] = rng.cgauss();
    for (int k = 0; k < elements; ++k) r.g[n][k] = rng.cgauss();
    r.h_ne[n] = rng.cgauss();
    r.g_ne[n] = rng.cgauss();
  }
  r.h_e.resize(elements);
  for (int k = 0; k < elements; ++k) r.h_e[k] = rng.cgauss();
  if (rli_mode == model::RliMode::sampled) {
    r.has_rli = true;
    r.rli_a.resize(n_pairs);
    r.rli_b.resize(n_pairs);
    for (int n = 0; n < n_pairs; ++n) {
      r.rli_a[n] = rng.cgauss(rli_variance_w);
      r.rli_b[n] = rng.cgauss(rli_variance_w);
    }
  }
  return r;
}

double cascade_zeta(std::span<const cplx> h, std::span<const cplx> g) {
  if (h.size() != g.size()) throw std::invalid_argument("cascade_zeta: length mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) s += std::abs(h[k]) * std::abs(g[k]);
  return s * s;
}

PhaseDesign optimal_phases_and_zeta(std::span<const cplx> h, std::span<const cplx> g) {
  if (h.size() != g.size())
    throw std::invalid_argument("optimal_phases_and_zeta: length mismatch");
  PhaseDesign d;
  d.phases.resize(h.size());
  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k < h.size(); ++k) {
    double th = -(std::arg(h[k]) + std::arg(g[k]));
    th = std::fmod(th, kTwoPi);
    if (th < 0.0) th += kTwoPi;
    d.phases[k] = th;
    sum += h[k] * std::polar(1.0, th) * g[k];
  }
  d.zeta = std::norm(sum);
  return d;
}

EveEffective eve_effective(const ChannelRealization& real, std::span<const double> phases,
                           const model::PathlossSet& pathloss, int pair) {
  if (pair < 0 || pair >= real.n_pairs ||
      pair >= static_cast<int>(pathloss.pairs.size()))
    throw std::out_of_range("eve_effective: pair index out of range");
  if (static_cast<int>(phases.size()) != real.elements)
    throw std::invalid_argument("eve_effective: phase vector length != K");
  const auto& pl = pathloss.pairs[pair];
  cplx casc_a{0.0, 0.0};
  cplx casc_b{0.0, 0.0};
  for (int k = 0; k < real.elements; ++k) {
    const cplx rot = std::polar(1.0, phases[k]);
    casc_a += real.h_e[k] * rot * real.h[pair][k];
    casc_b += real.h_e[k] * rot * real.g[pair][k];
  }
  EveEffective e;
  e.phi = std::sqrt(pl.beta_irs_ae) * casc_a + std::sqrt(pl.beta_dir_ae) * real.h_ne[pair];
  e.psi = std::sqrt(pl.beta_irs_be) * casc_b + std::sqrt(pl.beta_dir_be) * real.g_ne[pair];
  e.var_phi = pl.beta_irs_ae * real.elements + pl.beta_dir_ae;
  e.var_psi = pl.beta_irs_be * real.elements + pl.beta_dir_be;
  return e;
}

}  // namespace twsec::channels
