#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "twsec/model.hpp"
#include "twsec/schemes.hpp"

namespace twsec::montecarlo {

enum class GeometryMode { fixed, random_disc };
enum class Estimator { mean_positive_rate, jensen_bound };
enum class Quantity { rate_s1, rate_s2, sum };

const char* estimator_name(Estimator e);
const char* quantity_name(Quantity q);

struct CampaignConfig {
  model::SystemParams params;
  GeometryMode geometry_mode = GeometryMode::fixed;
  model::Point2 irs_pos{15.0, 0.0};
  model::Point2 eve_pos{15.0, 20.0};
  model::Point2 disc_a_center{0.0, 0.0};
  model::Point2 disc_b_center{30.0, 0.0};
  double disc_radius_m = 5.0;
  long trials = 10000;
  std::uint64_t seed = 1;
  std::vector<schemes::Scheme> schemes{schemes::Scheme::proposed};
  Estimator estimator = Estimator::mean_positive_rate;
  int workers = 0;  // 0 = hardware concurrency

  void validate() const;
};

// Everything the estimators and the validation suite need from one trial.
// log_* fields are log(1+gamma) in params.log_base units.
struct TrialRecord {
  double rate_s1 = 0.0;
  double rate_s2 = 0.0;
  double log_legit_a = 0.0;
  double log_legit_b = 0.0;
  double log_eve1 = 0.0;
  double log_eve2 = 0.0;
  int scheduled = 0;
  bool secure_s1 = false;  // gamma_a > gamma_e1
};

struct AsrEstimate {
  schemes::Scheme scheme;
  Quantity quantity;
  double mean = 0.0;
  double ci95_halfwidth = 0.0;
  long trials = 0;
  model::LogBase log_base = model::LogBase::nats;
};

// Runs `trials` independent trials of one scheme.  Trial t draws from the
// substream (seed, scheme, t): records are bit-identical for any worker
// count, and earlier trials never change when trials grows.
std::vector<TrialRecord> run_trials(const CampaignConfig& config, schemes::Scheme scheme);

std::vector<AsrEstimate> estimates_from_records(const std::vector<TrialRecord>& records,
                                                schemes::Scheme scheme, Estimator estimator,
                                                model::LogBase base);

std::vector<AsrEstimate> run_campaign(const CampaignConfig& config);

class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);  // throws on empty input
  double operator()(double x) const;                   // right-continuous
  const std::vector<double>& sorted_samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// sup_x |F_emp(x) - F(x)| over the sample points (both one-sided limits) and
// any extra evaluation points.
double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& analytic,
                   std::span<const double> eval_points = {});

}  // namespace twsec::montecarlo
