#pragma once

#include <vector>

#include "twsec/model.hpp"
#include "twsec/schemes.hpp"
#include "twsec/specfun.hpp"

namespace twsec::analytic {

// Gamma fit of the per-element cascade amplitude |h||g|:
// mu = pi^2/(16-pi^2), nu = (16-pi^2)/(4 pi); the K-element sum is
// Gamma(K mu, nu) and zeta is its square.
struct Lemma1Params {
  double mu;
  double nu;
  double shape;  // K mu
  explicit Lemma1Params(int elements);
};

// F_zeta(x) ~= P(K mu, sqrt(x)/nu)
double lemma1_cdf(double x, int elements);

// CDF of the scheduled (max over N i.i.d.) statistic: lemma1_cdf^N
double scheduled_cdf(double x, int elements, int n_pairs);

struct AnalyticInputs {
  schemes::SnrSet snr;
  double sigma_e2 = 0.0;   // beta_irs_ae K + beta_dir_ae
  double sigma_ep2 = 0.0;  // beta_irs_be K + beta_dir_be
  int elements = 0;
  int n_pairs = 0;
  specfun::QuadratureRule rule;
};

// E[ln(1 + rho zeta_max)] under Lemma 1, via the survival-function integral
//   int_0^inf rho (1 - F^N(x)) / (1 + rho x) dx.
// Evaluated as ln(1+rho c) - A + B with c the median of zeta_max and A, B
// the localized tail corrections, each integrated by the same G-C rule; the
// raw tan-mapped rule cannot resolve the integrand's log plateau at M=20.
double q_m(double rho, int elements, int n_pairs, const specfun::QuadratureRule& rule);

// E[ln(1+gamma_e1)] closed form; at sigma_e2 == sigma_ep2 the quotient has a
// removable singularity, replaced by its analytic limit 1 + u e^u Ei(-u).
double q_e1(double rho0, double sigma_e2, double sigma_ep2);

// E[ln(1+gamma_e2)] = J1 + J2 (exposed separately for the quadrature checks)
double q_e2_j1(double rho0, double sigma_e2, double sigma_ep2,
               const specfun::QuadratureRule& rule);
double q_e2_j2(const AnalyticInputs& in);
double q_e2(const AnalyticInputs& in);

struct Theorem1Bounds {
  double r_s1 = 0.0;
  double r_s2 = 0.0;
  // components, handy for CSV emission and validation
  double q_m_ab = 0.0;
  double q_m_ba = 0.0;
  double q_e1 = 0.0;
  double q_e2 = 0.0;
};

// Average-secrecy-rate lower bounds {Q_M - Q_E}^+ per signal, in nats.
// Requires fixed geometry (sigma_e^2, sigma_e'^2 are deterministic there).
Theorem1Bounds theorem1_bounds(const model::SystemParams& params,
                               const model::NetworkGeometry& geometry);

enum class ScalingKind { power, elements, pairs };

// Reference slope curve y0 + s (phi(x) - phi(x0)) with phi = ln, 2 ln, or
// ln ln; `signals` is the number of summed signals (1 or 2).
std::vector<double> scaling_reference(ScalingKind kind, const std::vector<double>& grid,
                                      double x0, double y0, int signals);

}  // namespace twsec::analytic
