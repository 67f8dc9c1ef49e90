#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "twsec/model.hpp"
#include "twsec/rng.hpp"

namespace twsec::channels {

using cplx = std::complex<double>;

// One fading draw for all N pairs.  Entries are i.i.d. CN(0,1).
struct ChannelRealization {
  int elements = 0;  // K
  int n_pairs = 0;   // N
  std::vector<std::vector<cplx>> h;  // [n][k], user A_n <-> IRS
  std::vector<std::vector<cplx>> g;  // [n][k], user B_n <-> IRS
  std::vector<cplx> h_e;             // IRS <-> Eve, shared
  std::vector<cplx> h_ne;            // A_n <-> Eve direct
  std::vector<cplx> g_ne;            // B_n <-> Eve direct
  // residual loop-interference draws, present only in sampled mode
  std::vector<cplx> rli_a;
  std::vector<cplx> rli_b;
  bool has_rli = false;
};

ChannelRealization sample_realization(Rng& rng, int elements, int n_pairs,
                                      model::RliMode rli_mode, double rli_variance_w);

struct PhaseDesign {
  std::vector<double> phases;  // theta_k in [0, 2pi)
  double zeta = 0.0;           // |sum_k h_k e^{j theta_k} g_k|^2
};

// Phases matched to the legitimate cascade: theta_k = -(arg h_k + arg g_k),
// which makes zeta = (sum_k |h_k||g_k|)^2.
PhaseDesign optimal_phases_and_zeta(std::span<const cplx> h, std::span<const cplx> g);

// Scheduling statistic only; skips building the phase vector.
double cascade_zeta(std::span<const cplx> h, std::span<const cplx> g);

struct EveEffective {
  cplx phi;         // effective A -> Eve
  cplx psi;         // effective B -> Eve
  double var_phi = 0.0;  // sigma_e^2   = beta_irs_ae K + beta_dir_ae
  double var_psi = 0.0;  // sigma_e'^2  = beta_irs_be K + beta_dir_be
};

// Eve's effective channels under the scheduled pair's IRS configuration.
EveEffective eve_effective(const ChannelRealization& real, std::span<const double> phases,
                           const model::PathlossSet& pathloss, int pair);

}  // namespace twsec::channels
