#pragma once

#include <string>
#include <vector>

#include "twsec/montecarlo.hpp"

namespace twsec::cli {

enum class SweepAxis { power_dbm, elements, pairs };

const char* axis_name(SweepAxis a);

struct SweepSpec {
  SweepAxis axis = SweepAxis::power_dbm;
  std::vector<double> values;  // non-empty, strictly increasing
  montecarlo::CampaignConfig base;
  bool include_analytic = true;
  bool include_reference_slopes = true;
  double reference_anchor = 0.0;  // 0 = middle grid point
  model::LogBase output_base = model::LogBase::bits;

  void validate() const;
};

struct SweepRow {
  double axis_value = 0.0;
  schemes::Scheme scheme;
  double rate_s1 = 0.0;
  double rate_s2 = 0.0;
  double sum = 0.0;
  double ci95 = 0.0;  // of the sum
  bool has_analytic = false;
  double analytic_s1 = 0.0;
  double analytic_s2 = 0.0;
  bool has_reference = false;
  double reference = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

SweepResult run_sweep(const SweepSpec& spec);

// Stable column set per (axis, output base); empty cells where a column does
// not apply to a row.
std::string sweep_csv(const SweepResult& result);

std::string sweep_svg(const SweepResult& result);

struct FigureOptions {
  long trials_override = 0;  // 0 = preset default
  std::uint64_t seed = 1;
  int workers = 0;
  bool nats = false;
  bool svg = false;
  bool force_fixed_geometry = false;  // presets default to the random-disc setup
};

// fig1: P sweep (K=32, N=10); fig2: K sweep (P=20 dBm, N=6);
// fig3: N sweep (P=30 dBm, K=32).  Returns the emitted file paths.
std::vector<std::string> run_figure_preset(const std::string& name, const std::string& out_dir,
                                           const FigureOptions& options);

}  // namespace twsec::cli
