#include "twsec/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace twsec::specfun {

namespace {

const double kLanczosG = 7.0;
const double kLanczosCoef[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

// series for P(a,x), x < a+1
double gamma_p_series(double a, double x, double lng) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(a * std::log(x) - x - lng);
}

// continued fraction for Q(a,x), x >= a+1 (modified Lentz)
double gamma_q_cf(double a, double x, double lng) {
  const double fpmin = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(a * std::log(x) - x - lng) * h;
}

// E1 series, 0 < x <= 1:  E1(x) = -gamma - ln x + sum (-1)^{k+1} x^k / (k k!)
double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term *= -x / k;
    const double add = -term / k;
    sum += add;
    if (std::fabs(add) < std::fabs(sum) * 1e-17) break;
  }
  return -kEulerGamma - std::log(x) + sum;
}

// continued fraction for e^x E1(x), x > 1 (modified Lentz)
double e1_scaled_cf(double x) {
  const double fpmin = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 300; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h;
}

// Ei series for x > 0:  gamma + ln x + sum x^k/(k k!)
double ei_series_pos(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 200; ++k) {
    term *= x / k;
    sum += term / k;
    if (term / k < sum * 1e-17) break;
  }
  return kEulerGamma + std::log(x) + sum;
}

// Ei asymptotic for large positive x:  e^x/x (1 + 1!/x + 2!/x^2 + ...)
double ei_asymptotic_pos(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double prev = term;
    term *= k / x;
    if (term > prev) break;  // truncate at the smallest term
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(x) / x * sum;
}

}  // namespace

double ln_gamma(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("ln_gamma: requires finite a > 0, got " + std::to_string(a));
  if (a < 0.5) {
    // reflection keeps the Lanczos argument comfortably positive
    return std::log(kPi / std::sin(kPi * a)) - ln_gamma(1.0 - a);
  }
  const double z = a - 1.0;
  double x = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) x += kLanczosCoef[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return 0.918938533204672741780329736406  // ln sqrt(2 pi)
         + (z + 0.5) * std::log(t) - t + std::log(x);
}

double reg_lower_gamma(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("reg_lower_gamma: requires a > 0");
  if (x < 0.0 || !std::isfinite(x))
    throw std::domain_error("reg_lower_gamma: requires x >= 0");
  if (x == 0.0) return 0.0;
  const double lng = ln_gamma(a);
  if (x < a + 1.0) return gamma_p_series(a, x, lng);
  return 1.0 - gamma_q_cf(a, x, lng);
}

double reg_upper_gamma(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("reg_upper_gamma: requires a > 0");
  if (x < 0.0 || !std::isfinite(x))
    throw std::domain_error("reg_upper_gamma: requires x >= 0");
  if (x == 0.0) return 1.0;
  const double lng = ln_gamma(a);
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x, lng);
  return gamma_q_cf(a, x, lng);
}

double e1_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("e1_scaled: requires x > 0");
  if (x > 1.0) return e1_scaled_cf(x);
  return std::exp(x) * e1_series(x);
}

double exp_integral_ei(double x) {
  if (x == 0.0 || !std::isfinite(x))
    throw std::domain_error("exp_integral_ei: logarithmic singularity at x = 0");
  if (x < 0.0) {
    const double t = -x;
    if (t <= 1.0) return -e1_series(t);
    return -std::exp(-t) * e1_scaled_cf(t);  // Ei(x) = -E1(-x)
  }
  if (x < 40.0) return ei_series_pos(x);
  return ei_asymptotic_pos(x);
}

QuadratureRule gc_rule(int order) {
  if (order < 1) throw std::domain_error("gc_rule: order must be >= 1");
  QuadratureRule r;
  r.order = order;
  r.nodes.resize(order);
  r.mapped_nodes.resize(order);
  r.weights.resize(order);
  for (int m = 1; m <= order; ++m) {
    const double arg = (2.0 * m - 1.0) * kPi / (2.0 * order);
    r.nodes[m - 1] = std::cos(arg);
    r.mapped_nodes[m - 1] = (kPi / 4.0) * (r.nodes[m - 1] + 1.0);
    r.weights[m - 1] = std::sin(arg);  // = sqrt(1 - theta^2), exactly
  }
  return r;
}

double gc_integrate_halfline(const std::function<double(double)>& f, const QuadratureRule& rule) {
  double sum = 0.0;
  for (int m = 0; m < rule.order; ++m) {
    const double x = rule.mapped_nodes[m];
    const double c = std::cos(x);
    const double v = f(std::tan(x));
    if (!std::isfinite(v))
      throw std::runtime_error("gc_integrate_halfline: integrand non-finite at node " +
                               std::to_string(m));
    sum += rule.weights[m] * v / (c * c);
  }
  return kPi * kPi / (4.0 * rule.order) * sum;
}

double gc_integrate_halfline_scaled(const std::function<double(double)>& f,
                                    const QuadratureRule& rule, double scale) {
  return gc_integrate_halfline([&](double t) { return scale * f(scale * t); }, rule);
}

double gc_integrate_halfline_sqrt(const std::function<double(double)>& f,
                                  const QuadratureRule& rule, double scale) {
  return gc_integrate_halfline([&](double t) { return 2.0 * scale * t * f(scale * t * t); }, rule);
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p in (0,1) required");
  // Acklam's rational approximation
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double gamma_quantile(double a, double p) {
  if (!(a > 0.0)) throw std::domain_error("gamma_quantile: a > 0 required");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gamma_quantile: p in (0,1) required");
  const double z = inverse_normal_cdf(p);
  const double wh = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
  double x = a * wh * wh * wh;
  if (!(x > 0.0)) x = a * std::exp(z / std::sqrt(a));
  const double lng = ln_gamma(a);
  for (int it = 0; it < 60; ++it) {
    const double F = reg_lower_gamma(a, x) - p;
    const double logpdf = (a - 1.0) * std::log(x) - x - lng;
    if (logpdf < -700.0) break;
    const double step = F / std::exp(logpdf);
    double xn = x - step;
    if (xn <= 0.0) xn = 0.5 * x;
    const bool done = std::fabs(xn - x) < 1e-13 * x;
    x = xn;
    if (done) break;
  }
  return x;
}

}  // namespace twsec::specfun
