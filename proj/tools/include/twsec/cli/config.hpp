#pragma once

#include <stdexcept>
#include <string>

#include "twsec/montecarlo.hpp"

namespace twsec::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value document ('#' comments).  Keys are the SystemParams /
// NetworkGeometry / campaign field names; points are "x,y".  Unspecified
// keys keep the built-in defaults (IRS (15,0), Eve (15,20), discs at
// (0,0)/(30,0) radius 5 m, G_u=G_e=15 dBi, S=0.1 m^2, sigma_0^2=-70 dBm,
// sigma_l^2=-40 dBm, alpha=3, M=20).
montecarlo::CampaignConfig parse_config(const std::string& text);

montecarlo::CampaignConfig load_config_file(const std::string& path);

}  // namespace twsec::cli
