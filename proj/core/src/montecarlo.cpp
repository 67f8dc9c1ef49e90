#include "twsec/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "twsec/channels.hpp"
#include "twsec/rng.hpp"

namespace twsec::montecarlo {

const char* estimator_name(Estimator e) {
  return e == Estimator::mean_positive_rate ? "mean_positive_rate" : "jensen_bound";
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::rate_s1: return "rate_s1";
    case Quantity::rate_s2: return "rate_s2";
    case Quantity::sum: return "sum";
  }
  return "?";
}

void CampaignConfig::validate() const {
  params.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (disc_radius_m < 0.0) throw std::invalid_argument("disc_radius_m must be >= 0");
  if (schemes.empty()) throw std::invalid_argument("at least one scheme required");
}

namespace {

double log_conv(model::LogBase base) {
  return base == model::LogBase::bits ? 1.0 / 0.693147180559945309417232121458 : 1.0;
}

int scheme_id(schemes::Scheme s) { return static_cast<int>(s); }

TrialRecord one_trial(const CampaignConfig& cfg, schemes::Scheme scheme, long t,
                      const model::NetworkGeometry* fixed_geom,
                      const model::PathlossSet* fixed_pl) {
  Rng rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(scheme_id(scheme)),
                         static_cast<std::uint64_t>(t)));

  model::NetworkGeometry local_geom;
  model::PathlossSet local_pl;
  const model::NetworkGeometry* geom = fixed_geom;
  const model::PathlossSet* pl = fixed_pl;
  if (!fixed_geom) {  // random-disc mode: positions are part of the trial draw
    local_geom = model::sample_user_positions(rng, cfg.params.pairs, cfg.irs_pos, cfg.eve_pos,
                                              cfg.disc_a_center, cfg.disc_b_center,
                                              cfg.disc_radius_m);
    local_pl = model::make_pathloss(local_geom, cfg.params);
    geom = &local_geom;
    pl = &local_pl;
  }

  const auto real = channels::sample_realization(rng, cfg.params.elements, cfg.params.pairs,
                                                 cfg.params.rli_mode, cfg.params.rli_w());
  const schemes::TrialContext ctx{cfg.params, *geom, *pl};
  schemes::TrialOutcome out;
  switch (scheme) {
    case schemes::Scheme::proposed: out = schemes::proposed_trial(real, ctx); break;
    case schemes::Scheme::oneway_jam: out = schemes::oneway_jamming_trial(real, ctx); break;
    case schemes::Scheme::fd_relay: out = schemes::fd_relay_trial(real, ctx, rng); break;
    case schemes::Scheme::hd_relay: out = schemes::hd_relay_trial(real, ctx, rng); break;
  }

  const double conv = log_conv(cfg.params.log_base);
  TrialRecord r;
  r.rate_s1 = out.rate_s1;
  r.rate_s2 = out.rate_s2;
  r.log_legit_a = conv * std::log1p(out.gamma_a);
  r.log_legit_b = conv * std::log1p(out.gamma_b);
  r.log_eve1 = conv * std::log1p(out.gamma_e1);
  r.log_eve2 = conv * std::log1p(out.gamma_e2);
  r.scheduled = out.scheduled;
  r.secure_s1 = out.gamma_a > out.gamma_e1;
  return r;
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

template <typename Get>
MeanSd mean_sd(const std::vector<TrialRecord>& rec, Get get) {
  const long n = static_cast<long>(rec.size());
  double sum = 0.0;
  for (const auto& r : rec) sum += get(r);
  MeanSd out;
  out.mean = sum / n;
  if (n > 1) {
    double ss = 0.0;
    for (const auto& r : rec) {
      const double d = get(r) - out.mean;
      ss += d * d;
    }
    out.sd = std::sqrt(ss / (n - 1));
  }
  return out;
}

double ci95(const MeanSd& ms, long n) { return n > 1 ? 1.96 * ms.sd / std::sqrt(double(n)) : 0.0; }

}  // namespace

std::vector<TrialRecord> run_trials(const CampaignConfig& cfg, schemes::Scheme scheme) {
  cfg.validate();
  model::NetworkGeometry fixed_geom;
  model::PathlossSet fixed_pl;
  const bool fixed = cfg.geometry_mode == GeometryMode::fixed || cfg.disc_radius_m == 0.0;
  if (fixed) {
    fixed_geom = model::fixed_geometry(cfg.params.pairs, cfg.irs_pos, cfg.eve_pos,
                                       cfg.disc_a_center, cfg.disc_b_center);
    fixed_pl = model::make_pathloss(fixed_geom, cfg.params);
  }

  std::vector<TrialRecord> records(cfg.trials);
  int workers = cfg.workers > 0 ? cfg.workers
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(std::min<long>(workers, cfg.trials));

  auto run_range = [&](long lo, long hi) {
    for (long t = lo; t < hi; ++t)
      records[t] = one_trial(cfg, scheme, t, fixed ? &fixed_geom : nullptr,
                             fixed ? &fixed_pl : nullptr);
  };

  if (workers == 1) {
    run_range(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (cfg.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long lo = w * chunk;
      const long hi = std::min<long>(lo + chunk, cfg.trials);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return records;
}

std::vector<AsrEstimate> estimates_from_records(const std::vector<TrialRecord>& rec,
                                                schemes::Scheme scheme, Estimator estimator,
                                                model::LogBase base) {
  const long n = static_cast<long>(rec.size());
  std::vector<AsrEstimate> out;
  auto push = [&](Quantity q, double mean, double ci) {
    out.push_back({scheme, q, mean, ci, n, base});
  };
  if (estimator == Estimator::mean_positive_rate) {
    const auto m1 = mean_sd(rec, [](const TrialRecord& r) { return r.rate_s1; });
    const auto m2 = mean_sd(rec, [](const TrialRecord& r) { return r.rate_s2; });
    const auto ms = mean_sd(rec, [](const TrialRecord& r) { return r.rate_s1 + r.rate_s2; });
    push(Quantity::rate_s1, m1.mean, ci95(m1, n));
    push(Quantity::rate_s2, m2.mean, ci95(m2, n));
    push(Quantity::sum, ms.mean, ci95(ms, n));
  } else {
    const auto d1 = mean_sd(rec, [](const TrialRecord& r) { return r.log_legit_a - r.log_eve1; });
    const auto d2 = mean_sd(rec, [](const TrialRecord& r) { return r.log_legit_b - r.log_eve2; });
    const auto ds = mean_sd(rec, [](const TrialRecord& r) {
      return r.log_legit_a - r.log_eve1 + r.log_legit_b - r.log_eve2;
    });
    push(Quantity::rate_s1, std::max(0.0, d1.mean), ci95(d1, n));
    push(Quantity::rate_s2, std::max(0.0, d2.mean), ci95(d2, n));
    push(Quantity::sum, std::max(0.0, d1.mean) + std::max(0.0, d2.mean), ci95(ds, n));
  }
  return out;
}

std::vector<AsrEstimate> run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  std::vector<AsrEstimate> all;
  for (const auto scheme : cfg.schemes) {
    const auto rec = run_trials(cfg, scheme);
    const auto est = estimates_from_records(rec, scheme, cfg.estimator, cfg.params.log_base);
    all.insert(all.end(), est.begin(), est.end());
  }
  return all;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::invalid_argument("EmpiricalCdf: empty sample set");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& analytic,
                   std::span<const double> eval_points) {
  const auto& xs = empirical.sorted_samples();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;  // run of equal samples counts as one jump
    while (j + 1 < xs.size() && xs[j + 1] == xs[i]) ++j;
    // compare at the jump and just left of it; the analytic side gets its own
    // left limit so a step function compared with itself scores zero
    d = std::max(d, std::fabs((j + 1.0) / n - analytic(xs[i])));
    const double left = std::nextafter(xs[i], -1e308);
    d = std::max(d, std::fabs(static_cast<double>(i) / n - analytic(left)));
    i = j + 1;
  }
  for (const double p : eval_points) d = std::max(d, std::fabs(empirical(p) - analytic(p)));
  return d;
}

}  // namespace twsec::montecarlo
