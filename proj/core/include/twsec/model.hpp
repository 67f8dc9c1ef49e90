#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "twsec/rng.hpp"

namespace twsec::model {

enum class RliMode { deterministic, sampled };
enum class LogBase { nats, bits };

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// All scalar knobs.  Defaults are the evaluation setup used throughout:
// IRS at (15,0), Eve at (15,20), user discs at (0,0)/(30,0) r=5.
struct SystemParams {
  double power_dbm = 30.0;
  int elements = 32;   // K
  int pairs = 10;      // N
  int quad_order = 20; // M
  double noise_dbm = -70.0;
  double rli_dbm = -40.0;
  double pathloss_exp = 3.0;
  double gain_user_dbi = 15.0;
  double gain_eve_dbi = 15.0;
  double element_area_m2 = 0.1;
  RliMode rli_mode = RliMode::deterministic;
  LogBase log_base = LogBase::nats;

  void validate() const;  // throws std::invalid_argument on a bad knob

  double power_w() const;
  double noise_w() const;
  double rli_w() const;
};

double dbm_to_watt(double v);
double dbi_to_linear(double g);

struct PairGeometry {
  Point2 a_pos;
  Point2 b_pos;
  double d_a = 0.0;   // A_n <-> IRS
  double d_b = 0.0;   // B_n <-> IRS
  double d_ae = 0.0;  // A_n <-> Eve
  double d_be = 0.0;  // B_n <-> Eve
};

struct NetworkGeometry {
  Point2 irs_pos{15.0, 0.0};
  Point2 eve_pos{15.0, 20.0};
  double d_e = 0.0;  // IRS <-> Eve
  std::vector<PairGeometry> pairs;
  bool fixed = true;  // true when every pair sits at deterministic positions

  void validate() const;
};

// Geometry with every pair pinned at the two given points.
NetworkGeometry fixed_geometry(int n_pairs, Point2 irs, Point2 eve, Point2 a_center,
                               Point2 b_center);

// Users area-uniform inside discs (radius sampled as R*sqrt(u)); radius 0
// degenerates to fixed_geometry.
NetworkGeometry sample_user_positions(Rng& rng, int n_pairs, Point2 irs, Point2 eve,
                                      Point2 disc_a_center, Point2 disc_b_center, double radius);

struct PairPathloss {
  // IRS cascades and direct links of the proposed scheme
  double beta_irs_ab = 0.0;  // A<->B via one element
  double beta_irs_ba = 0.0;
  double beta_irs_aa = 0.0;  // self path A->IRS->A
  double beta_irs_ae = 0.0;
  double beta_irs_be = 0.0;
  double beta_dir_ae = 0.0;
  double beta_dir_be = 0.0;
  // relay baselines: element-equivalent apertures at the IRS position
  double beta_ar = 0.0;
  double beta_br = 0.0;
  double beta_dir_ae_relay = 0.0;
  double beta_dir_be_relay = 0.0;
};

struct PathlossSet {
  std::vector<PairPathloss> pairs;
  double beta_re = 0.0;  // relay <-> Eve (one link exists)
};

PathlossSet make_pathloss(const NetworkGeometry& geom, const SystemParams& params);

}  // namespace twsec::model
