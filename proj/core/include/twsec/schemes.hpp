#pragma once

#include <optional>
#include <span>
#include <utility>

#include "twsec/channels.hpp"
#include "twsec/model.hpp"
#include "twsec/rng.hpp"

namespace twsec::schemes {

enum class Scheme { proposed, oneway_jam, fd_relay, hd_relay };

const char* scheme_name(Scheme s);

struct SnrSet {
  double rho_ab = 0.0;  // P beta_irs_ab / (sigma_l^2 + sigma_0^2)
  double rho_ba = 0.0;
  double rho_0 = 0.0;   // P / sigma_0^2
};

SnrSet make_snr(const model::SystemParams& params, const model::PairPathloss& pl);

struct TrialOutcome {
  Scheme scheme = Scheme::proposed;
  int scheduled = 0;        // n*
  double gamma_a = 0.0;     // legitimate SINR paired with gamma_e1
  double gamma_b = 0.0;     // legitimate SINR paired with gamma_e2
  double gamma_e1 = 0.0;
  double gamma_e2 = 0.0;
  bool eve_decoded_s1 = false;
  double rate_s1 = 0.0;     // units per params.log_base, prelog included
  double rate_s2 = 0.0;
};

// gamma_a = rho_ab * zeta etc. in deterministic-RLI mode; sampled mode uses
// the drawn |l|^2 in the denominator.  Self-interference is always cancelled.
std::pair<double, double> legit_sinrs(double zeta, const SnrSet& snr, model::RliMode rli_mode,
                                      const std::optional<std::pair<channels::cplx, channels::cplx>>& rli_draws,
                                      double noise_w, double power_w,
                                      const model::PairPathloss& pl);

struct EveSinrs {
  double gamma_e1 = 0.0;
  double gamma_e2 = 0.0;
  bool decoded = false;
};

// Eve first tries s1 against s2's interference; on success (gamma_e1 >=
// gamma_a) she cancels s1 and reads s2 interference-free.
EveSinrs eve_sinrs(const channels::EveEffective& eff, double gamma_a, double power_w,
                   double noise_w);

// argmax over the scheduling statistics, lowest index on ties
int schedule(std::span<const double> zetas);

// {log(1+gl) - log(1+ge)}^+ scaled by prelog, in the requested base
double secrecy_rate(double gamma_legit, double gamma_eve, double prelog, model::LogBase base);

struct TrialContext {
  const model::SystemParams& params;
  const model::NetworkGeometry& geometry;
  const model::PathlossSet& pathloss;
};

TrialOutcome proposed_trial(const channels::ChannelRealization& real, const TrialContext& ctx);

// Two-phase baseline: the idle user jams at full duplex, each phase carries
// a 1/2 pre-log.  Scheduling matches the proposed scheme.
TrialOutcome oneway_jamming_trial(const channels::ChannelRealization& real,
                                  const TrialContext& ctx);

// Full-duplex AF relay with K antennas at the IRS position; pair chosen
// uniformly (rng) since the relay has no zeta statistic to schedule on.
TrialOutcome fd_relay_trial(const channels::ChannelRealization& real, const TrialContext& ctx,
                            Rng& rng);

TrialOutcome hd_relay_trial(const channels::ChannelRealization& real, const TrialContext& ctx,
                            Rng& rng);

}  // namespace twsec::schemes
