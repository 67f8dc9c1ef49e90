#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "twsec/analytic.hpp"
#include "twsec/cli/config.hpp"
#include "twsec/cli/sweep.hpp"
#include "twsec/csv.hpp"
#include "twsec/validation.hpp"

namespace {

using twsec::cli::SweepAxis;
namespace fs = std::filesystem;

constexpr double kLn2 = 0.693147180559945309417232121458;

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  long trials = 0;
  std::string out_dir = ".";
  bool nats = false;
  bool svg = false;
  std::string geometry;
  int workers = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_svg = true) {
  cmd->add_option("--config", o.config_path, "flat key=value config file");
  cmd->add_option("--seed", o.seed, "campaign seed (overrides config)");
  cmd->add_option("--trials", o.trials, "trial count (overrides config)");
  cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd->add_flag("--nats", o.nats, "emit rates in nats instead of bits");
  if (with_svg) cmd->add_flag("--svg", o.svg, "also emit an SVG chart");
  cmd->add_option("--geometry", o.geometry, "fixed|random geometry override");
  cmd->add_option("--workers", o.workers, "parallel workers (0 = hardware)");
}

twsec::montecarlo::CampaignConfig make_config(const CommonOpts& o) {
  auto cfg = o.config_path.empty() ? twsec::montecarlo::CampaignConfig{}
                                   : twsec::cli::load_config_file(o.config_path);
  if (o.seed != 0) cfg.seed = o.seed;
  if (o.trials != 0) cfg.trials = o.trials;
  if (o.workers >= 0) cfg.workers = o.workers;
  if (o.geometry == "fixed") cfg.geometry_mode = twsec::montecarlo::GeometryMode::fixed;
  else if (o.geometry == "random") cfg.geometry_mode = twsec::montecarlo::GeometryMode::random_disc;
  else if (!o.geometry.empty()) throw CLI::ValidationError("--geometry must be fixed|random");
  return cfg;
}

std::string write_file(const std::string& dir, const std::string& name, const std::string& body) {
  fs::create_directories(dir);
  const auto path = (fs::path(dir) / name).string();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
  return path;
}

int cmd_analytic(const CommonOpts& o) {
  auto cfg = make_config(o);
  const auto geom = twsec::model::fixed_geometry(cfg.params.pairs, cfg.irs_pos, cfg.eve_pos,
                                                 cfg.disc_a_center, cfg.disc_b_center);
  const auto b = twsec::analytic::theorem1_bounds(cfg.params, geom);
  const double conv = o.nats ? 1.0 : 1.0 / kLn2;
  const char* u = o.nats ? "nats" : "bits";
  std::ostringstream os;
  os << "power_dbm,elements,pairs,quad_order,q_m_" << u << ",q_e1_" << u << ",q_e2_" << u
     << ",bound_s1_" << u << ",bound_s2_" << u << ",bound_sum_" << u << "\n";
  using twsec::csv::format_float;
  os << format_float(cfg.params.power_dbm) << ',' << cfg.params.elements << ','
     << cfg.params.pairs << ',' << cfg.params.quad_order << ',' << format_float(conv * b.q_m_ab)
     << ',' << format_float(conv * b.q_e1) << ',' << format_float(conv * b.q_e2) << ','
     << format_float(conv * b.r_s1) << ',' << format_float(conv * b.r_s2) << ','
     << format_float(conv * (b.r_s1 + b.r_s2)) << '\n';
  const auto path = write_file(o.out_dir, "analytic.csv", os.str());
  std::cout << os.str();
  std::cerr << "wrote " << path << "\n";
  return 0;
}

int cmd_simulate(const CommonOpts& o) {
  auto cfg = make_config(o);
  cfg.params.log_base = o.nats ? twsec::model::LogBase::nats : twsec::model::LogBase::bits;
  const auto estimates = twsec::montecarlo::run_campaign(cfg);
  const auto body = twsec::csv::estimates_csv(estimates, cfg.params.log_base);
  const auto path = write_file(o.out_dir, "simulate.csv", body);
  std::cout << body;
  std::cerr << "wrote " << path << "\n";
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& axis, const std::vector<double>& values) {
  twsec::cli::SweepSpec spec;
  spec.base = make_config(o);
  if (axis == "power_dbm") spec.axis = SweepAxis::power_dbm;
  else if (axis == "elements") spec.axis = SweepAxis::elements;
  else if (axis == "pairs") spec.axis = SweepAxis::pairs;
  else throw CLI::ValidationError("--axis must be power_dbm|elements|pairs");
  spec.values = values;
  spec.output_base = o.nats ? twsec::model::LogBase::nats : twsec::model::LogBase::bits;
  const auto result = twsec::cli::run_sweep(spec);
  const auto path = write_file(o.out_dir, "sweep.csv", twsec::cli::sweep_csv(result));
  std::cerr << "wrote " << path << "\n";
  if (o.svg) {
    const auto p2 = write_file(o.out_dir, "sweep.svg", twsec::cli::sweep_svg(result));
    std::cerr << "wrote " << p2 << "\n";
  }
  return 0;
}

int cmd_figure(const CommonOpts& o, const std::string& preset) {
  twsec::cli::FigureOptions fo;
  fo.trials_override = o.trials;
  if (o.seed != 0) fo.seed = o.seed;
  if (o.workers >= 0) fo.workers = o.workers;
  fo.nats = o.nats;
  fo.svg = o.svg;
  fo.force_fixed_geometry = o.geometry == "fixed";
  const auto files = twsec::cli::run_figure_preset(preset, o.out_dir, fo);
  for (const auto& f : files) std::cerr << "wrote " << f << "\n";
  return 0;
}

int cmd_validate(const std::string& level, const std::string& json_path) {
  const auto lv = level == "quick" ? twsec::validation::Level::quick
                                   : twsec::validation::Level::full;
  const auto results = twsec::validation::run_acceptance(lv, &std::cout);
  if (!json_path.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) {
      j.push_back({{"id", r.id},
                   {"name", r.name},
                   {"measured", r.measured},
                   {"threshold", r.threshold},
                   {"relation", r.relation},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"detail", r.detail}});
    }
    std::ofstream f(json_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + json_path);
    f << j.dump(2) << "\n";
    std::cerr << "wrote " << json_path << "\n";
  }
  return twsec::validation::all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-assisted two-way secrecy-rate simulator and analytic evaluator"};
  app.require_subcommand(1);

  CommonOpts o_an, o_sim, o_sw, o_fig;
  std::string sweep_axis = "power_dbm";
  std::vector<double> sweep_values;
  std::string fig_preset;
  std::string val_level = "full";
  std::string val_json;

  auto* analytic = app.add_subcommand("analytic", "closed-form ASR lower bounds");
  add_common(analytic, o_an, false);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo campaign at one operating point");
  add_common(simulate, o_sim, false);

  auto* sweep = app.add_subcommand("sweep", "sweep one axis, CSV per (value, scheme)");
  add_common(sweep, o_sw);
  sweep->add_option("--axis", sweep_axis, "power_dbm|elements|pairs")->capture_default_str();
  sweep->add_option("--values", sweep_values, "strictly increasing grid")->required();

  auto* figure = app.add_subcommand("figure", "reproduce a paper-style figure preset");
  add_common(figure, o_fig);
  figure->add_option("preset", fig_preset, "fig1|fig2|fig3")->required();

  auto* validate = app.add_subcommand("validate", "run the acceptance-criteria suite");
  validate->add_option("--level", val_level, "quick|full")->capture_default_str();
  validate->add_option("--json", val_json, "write a JSON report to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analytic->parsed()) return cmd_analytic(o_an);
    if (simulate->parsed()) return cmd_simulate(o_sim);
    if (sweep->parsed()) return cmd_sweep(o_sw, sweep_axis, sweep_values);
    if (figure->parsed()) return cmd_figure(o_fig, fig_preset);
    if (validate->parsed()) return cmd_validate(val_level, val_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
