#pragma once

#include <functional>
#include <vector>

namespace twsec::specfun {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// ln Gamma(a), a > 0.  Lanczos, relative error well under 1e-12 on [1e-3, 1e4].
double ln_gamma(double a);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
// Series for x < a+1, continued fraction above, both assembled in log space
// so large shapes (a = K*mu up to ~10^3) never overflow.
double reg_lower_gamma(double a, double x);

// Regularized upper incomplete Q(a,x) = 1 - P(a,x), computed on its own
// branch (not as 1-P) so the complement identity can be tested honestly.
double reg_upper_gamma(double a, double x);

// Exponential integral Ei(x), x != 0.  Negative axis: series near zero,
// continued fraction for large |x|.  Positive axis: series / asymptotic.
double exp_integral_ei(double x);

// e^x * E1(x) for x > 0, evaluated jointly (continued fraction computes the
// scaled quantity directly), so e^{tau} Ei(-tau) = -e1_scaled(tau) never
// overflows for large tau.
double e1_scaled(double x);

// Gauss-Chebyshev rule mapped to (0, pi/2): theta_m = cos((2m-1)pi/(2M)),
// x_m = (pi/4)(theta_m + 1), weight sqrt(1 - theta_m^2).
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;         // theta_m, strictly decreasing
  std::vector<double> mapped_nodes;  // x_m in (0, pi/2)
  std::vector<double> weights;       // sqrt(1 - theta_m^2)
};

QuadratureRule gc_rule(int order);

// (pi^2 / 4M) sum_m sqrt(1-theta_m^2) sec^2(x_m) f(tan x_m)  ~  int_0^inf f
// The pi^2/(4M) Jacobian prefactor is always applied.
double gc_integrate_halfline(const std::function<double(double)>& f, const QuadratureRule& rule);

// Same rule after the exact change of variable x = scale * t (scale > 0).
double gc_integrate_halfline_scaled(const std::function<double(double)>& f,
                                    const QuadratureRule& rule, double scale);

// Same rule after the exact change of variable x = scale * t^2; spreads the
// nodes over decades, which tames integrands with log-type plateaus.
double gc_integrate_halfline_sqrt(const std::function<double(double)>& f,
                                  const QuadratureRule& rule, double scale);

// Quantile of the Gamma(a, scale 1) distribution: solves P(a,x) = p by Newton
// from a Wilson-Hilferty start.  Used to place quadrature scales.
double gamma_quantile(double a, double p);

// Inverse standard normal CDF (Acklam), |error| < 1.2e-9.
double inverse_normal_cdf(double p);

}  // namespace twsec::specfun
