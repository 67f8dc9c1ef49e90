#include "twsec/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace twsec::schemes {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::proposed: return "proposed";
    case Scheme::oneway_jam: return "oneway_jam";
    case Scheme::fd_relay: return "fd_relay";
    case Scheme::hd_relay: return "hd_relay";
  }
  return "?";
}

SnrSet make_snr(const model::SystemParams& params, const model::PairPathloss& pl) {
  const double p = params.power_w();
  const double denom = params.rli_w() + params.noise_w();
  SnrSet s;
  s.rho_ab = p * pl.beta_irs_ab / denom;
  s.rho_ba = p * pl.beta_irs_ba / denom;
  s.rho_0 = p / params.noise_w();
  return s;
}

std::pair<double, double> legit_sinrs(
    double zeta, const SnrSet& snr, model::RliMode rli_mode,
    const std::optional<std::pair<channels::cplx, channels::cplx>>& rli_draws, double noise_w,
    double power_w, const model::PairPathloss& pl) {
  if (zeta < 0.0) throw std::invalid_argument("legit_sinrs: zeta must be >= 0");
  if (rli_mode == model::RliMode::deterministic)
    return {snr.rho_ab * zeta, snr.rho_ba * zeta};
  if (!rli_draws)
    throw std::invalid_argument("legit_sinrs: sampled RLI mode requires drawn l_A, l_B");
  const double den_a = std::norm(rli_draws->first) + noise_w;
  const double den_b = std::norm(rli_draws->second) + noise_w;
  return {power_w * pl.beta_irs_ab * zeta / den_a, power_w * pl.beta_irs_ba * zeta / den_b};
}

EveSinrs eve_sinrs(const channels::EveEffective& eff, double gamma_a, double power_w,
                   double noise_w) {
  EveSinrs out;
  const double p_phi = power_w * std::norm(eff.phi);
  const double p_psi = power_w * std::norm(eff.psi);
  out.gamma_e1 = p_phi / (p_psi + noise_w);
  out.decoded = out.gamma_e1 >= gamma_a;
  out.gamma_e2 = out.decoded ? p_psi / noise_w : p_psi / (p_phi + noise_w);
  return out;
}

int schedule(std::span<const double> zetas) {
  if (zetas.empty()) throw std::invalid_argument("schedule: empty zeta list");
  int best = 0;
  for (int n = 1; n < static_cast<int>(zetas.size()); ++n)
    if (zetas[n] > zetas[best]) best = n;
  return best;
}

double secrecy_rate(double gamma_legit, double gamma_eve, double prelog, model::LogBase base) {
  double r = std::log1p(gamma_legit) - std::log1p(gamma_eve);
  if (r < 0.0) r = 0.0;
  r *= prelog;
  if (base == model::LogBase::bits) r /= 0.693147180559945309417232121458;
  return r;
}

namespace {

struct ScheduledPick {
  int pair;
  channels::PhaseDesign design;
};

ScheduledPick schedule_and_design(const channels::ChannelRealization& real) {
  std::vector<double> zetas(real.n_pairs);
  for (int n = 0; n < real.n_pairs; ++n) zetas[n] = channels::cascade_zeta(real.h[n], real.g[n]);
  const int pick = schedule(zetas);
  return {pick, channels::optimal_phases_and_zeta(real.h[pick], real.g[pick])};
}

std::optional<std::pair<channels::cplx, channels::cplx>> rli_for(
    const channels::ChannelRealization& real, int pair) {
  if (!real.has_rli) return std::nullopt;
  return std::make_pair(real.rli_a[pair], real.rli_b[pair]);
}

struct RelayProjections {
  double nh2, ng2, nh, ng, gu_abs, heu_abs;
};

RelayProjections relay_projections(const channels::ChannelRealization& real, int pair) {
  const auto& h = real.h[pair];
  const auto& g = real.g[pair];
  double nh2 = 0.0, ng2 = 0.0;
  channels::cplx gh{0.0, 0.0}, eh{0.0, 0.0};
  for (int k = 0; k < real.elements; ++k) {
    nh2 += std::norm(h[k]);
    ng2 += std::norm(g[k]);
    gh += g[k] * std::conj(h[k]);
    eh += real.h_e[k] * std::conj(h[k]);
  }
  if (!(nh2 > 0.0) || !(ng2 > 0.0))
    throw std::runtime_error("relay trial: zero-norm channel vector");
  RelayProjections p;
  p.nh2 = nh2;
  p.ng2 = ng2;
  p.nh = std::sqrt(nh2);
  p.ng = std::sqrt(ng2);
  p.gu_abs = std::abs(gh) / p.nh;   // |g_n u|, u = h_n^H / ||h_n||
  p.heu_abs = std::abs(eh) / p.nh;  // |h_e u|
  return p;
}

int uniform_pair(Rng& rng, int n_pairs) {
  int n = static_cast<int>(rng.uniform() * n_pairs);
  if (n >= n_pairs) n = n_pairs - 1;
  return n;
}

}  // namespace

TrialOutcome proposed_trial(const channels::ChannelRealization& real, const TrialContext& ctx) {
  const auto pick = schedule_and_design(real);
  const auto& pl = ctx.pathloss.pairs[pick.pair];
  const SnrSet snr = make_snr(ctx.params, pl);
  const auto [ga, gb] =
      legit_sinrs(pick.design.zeta, snr, ctx.params.rli_mode, rli_for(real, pick.pair),
                  ctx.params.noise_w(), ctx.params.power_w(), pl);
  const auto eff = channels::eve_effective(real, pick.design.phases, ctx.pathloss, pick.pair);
  const auto ev = eve_sinrs(eff, ga, ctx.params.power_w(), ctx.params.noise_w());

  TrialOutcome out;
  out.scheme = Scheme::proposed;
  out.scheduled = pick.pair;
  out.gamma_a = ga;
  out.gamma_b = gb;
  out.gamma_e1 = ev.gamma_e1;
  out.gamma_e2 = ev.gamma_e2;
  out.eve_decoded_s1 = ev.decoded;
  out.rate_s1 = secrecy_rate(ga, ev.gamma_e1, 1.0, ctx.params.log_base);
  out.rate_s2 = secrecy_rate(gb, ev.gamma_e2, 1.0, ctx.params.log_base);
  return out;
}

TrialOutcome oneway_jamming_trial(const channels::ChannelRealization& real,
                                  const TrialContext& ctx) {
  const auto pick = schedule_and_design(real);
  const auto& pl = ctx.pathloss.pairs[pick.pair];
  const SnrSet snr = make_snr(ctx.params, pl);
  // Phase 1: A sends s1, B jams (and cancels its own jamming reflection but
  // keeps the full-duplex RLI).  Phase 2 mirrors it.
  const auto [g_rx_a, g_rx_b] =
      legit_sinrs(pick.design.zeta, snr, ctx.params.rli_mode, rli_for(real, pick.pair),
                  ctx.params.noise_w(), ctx.params.power_w(), pl);
  const auto eff = channels::eve_effective(real, pick.design.phases, ctx.pathloss, pick.pair);
  const double p = ctx.params.power_w();
  const double n0 = ctx.params.noise_w();
  const double ge_s1 = p * std::norm(eff.phi) / (p * std::norm(eff.psi) + n0);
  const double ge_s2 = p * std::norm(eff.psi) / (p * std::norm(eff.phi) + n0);

  TrialOutcome out;
  out.scheme = Scheme::oneway_jam;
  out.scheduled = pick.pair;
  out.gamma_a = g_rx_b;  // s1's receiver is B_n
  out.gamma_b = g_rx_a;  // s2's receiver is A_n
  out.gamma_e1 = ge_s1;
  out.gamma_e2 = ge_s2;
  out.eve_decoded_s1 = false;  // Eve is jammed in both phases, no SIC branch
  out.rate_s1 = secrecy_rate(out.gamma_a, ge_s1, 0.5, ctx.params.log_base);
  out.rate_s2 = secrecy_rate(out.gamma_b, ge_s2, 0.5, ctx.params.log_base);
  return out;
}

TrialOutcome fd_relay_trial(const channels::ChannelRealization& real, const TrialContext& ctx,
                            Rng& rng) {
  const int pair = uniform_pair(rng, real.n_pairs);
  const auto& pl = ctx.pathloss.pairs[pair];
  const auto pr = relay_projections(real, pair);
  const double p = ctx.params.power_w();
  const double n0 = ctx.params.noise_w();
  const double s2n = ctx.params.rli_w() + n0;
  const double b_re = ctx.pathloss.beta_re;

  const double kf2 = p / (p * pl.beta_ar * pr.nh2 + p * pl.beta_br * pr.ng2 + s2n);
  const double kf = std::sqrt(kf2);

  const double gn1 = pl.beta_ar * pl.beta_br * kf2 * p * pr.nh2 * pr.ng2 /
                     ((pl.beta_ar * kf2 * pr.nh2 + 1.0) * s2n);
  const double gu2 = pr.gu_abs * pr.gu_abs;
  const double gn2 = pl.beta_ar * pl.beta_br * kf2 * p * pr.nh2 * gu2 /
                     ((pl.beta_br * kf2 * gu2 + 1.0) * s2n);

  // Eve combines the direct and relay-forwarded paths; the forwarded term is
  // a nonnegative amplitude added to the complex direct gain.
  const channels::cplx amp_a = std::sqrt(pl.beta_dir_ae_relay) * real.h_ne[pair] +
                               std::sqrt(pl.beta_ar * b_re) * kf * pr.nh * pr.heu_abs;
  const channels::cplx amp_b = std::sqrt(pl.beta_dir_be_relay) * real.g_ne[pair] +
                               std::sqrt(pl.beta_br * b_re) * kf * pr.ng * pr.heu_abs;
  const double num_a = std::norm(amp_a);
  const double num_b = std::norm(amp_b);
  const double fwd_noise = b_re * kf2 * pr.heu_abs * pr.heu_abs * s2n + n0;
  const double ge1 = p * num_a / (p * num_b + fwd_noise);
  const double ge2 = p * num_b / fwd_noise;

  TrialOutcome out;
  out.scheme = Scheme::fd_relay;
  out.scheduled = pair;
  out.gamma_a = gn1;
  out.gamma_b = gn2;
  out.gamma_e1 = ge1;
  out.gamma_e2 = ge2;
  out.eve_decoded_s1 = true;  // SIC assumed by the baseline's gamma_e2 form
  out.rate_s1 = secrecy_rate(gn1, ge1, 1.0, ctx.params.log_base);
  out.rate_s2 = secrecy_rate(gn2, ge2, 1.0, ctx.params.log_base);
  return out;
}

TrialOutcome hd_relay_trial(const channels::ChannelRealization& real, const TrialContext& ctx,
                            Rng& rng) {
  const int pair = uniform_pair(rng, real.n_pairs);
  const auto& pl = ctx.pathloss.pairs[pair];
  const auto pr = relay_projections(real, pair);
  const double p = ctx.params.power_w();
  const double n0 = ctx.params.noise_w();
  const double rho0 = p / n0;
  const double b_re = ctx.pathloss.beta_re;

  // kappa_h = kappa_f evaluated at sigma_l^2 = 0
  const double kh2 = p / (p * pl.beta_ar * pr.nh2 + p * pl.beta_br * pr.ng2 + n0);
  const double khm2 = 1.0 / kh2;

  const double gn1 = rho0 * pl.beta_ar * pl.beta_br * pr.nh2 * pr.ng2 /
                     (pl.beta_ar * pr.nh2 + khm2);
  const double gu2 = pr.gu_abs * pr.gu_abs;
  const double gn2 = rho0 * pl.beta_ar * pl.beta_br * pr.nh2 * gu2 /
                     (pl.beta_br * gu2 + khm2);

  const double heu2 = pr.heu_abs * pr.heu_abs;
  const double hne2 = std::norm(real.h_ne[pair]);
  const double gne2 = std::norm(real.g_ne[pair]);
  const double ge1 =
      rho0 * pl.beta_dir_ae_relay * hne2 / (rho0 * pl.beta_dir_be_relay * gne2 + 1.0) +
      rho0 * b_re * pl.beta_ar * pr.nh2 * heu2 /
          (rho0 * b_re * pl.beta_br * pr.ng2 * heu2 + b_re * heu2 + khm2);
  const double ge2 = rho0 * pl.beta_dir_be_relay * gne2 +
                     rho0 * b_re * pl.beta_br * pr.ng2 * heu2 / (b_re * heu2 + khm2);

  TrialOutcome out;
  out.scheme = Scheme::hd_relay;
  out.scheduled = pair;
  out.gamma_a = gn1;
  out.gamma_b = gn2;
  out.gamma_e1 = ge1;
  out.gamma_e2 = ge2;
  out.eve_decoded_s1 = true;
  out.rate_s1 = secrecy_rate(gn1, ge1, 0.5, ctx.params.log_base);
  out.rate_s2 = secrecy_rate(gn2, ge2, 0.5, ctx.params.log_base);
  return out;
}

}  // namespace twsec::schemes
