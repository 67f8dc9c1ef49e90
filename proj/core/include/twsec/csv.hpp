#pragma once

#include <string>
#include <vector>

#include "twsec/montecarlo.hpp"

namespace twsec::csv {

// 9 significant digits, shortest form ("%.9g")
std::string format_float(double v);

const char* unit_suffix(model::LogBase base);  // "nats" | "bits"

// Canonical campaign-estimate table: one row per (scheme, quantity).
// Columns: scheme,quantity,mean_<unit>,ci95_<unit>,trials
std::string estimates_csv(const std::vector<montecarlo::AsrEstimate>& estimates,
                          model::LogBase base);

}  // namespace twsec::csv
