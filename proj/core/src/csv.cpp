#include "twsec/csv.hpp"

#include <cstdio>
#include <sstream>

namespace twsec::csv {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

const char* unit_suffix(model::LogBase base) {
  return base == model::LogBase::bits ? "bits" : "nats";
}

std::string estimates_csv(const std::vector<montecarlo::AsrEstimate>& estimates,
                          model::LogBase base) {
  const char* u = unit_suffix(base);
  std::ostringstream os;
  os << "scheme,quantity,mean_" << u << ",ci95_" << u << ",trials\n";
  for (const auto& e : estimates) {
    os << schemes::scheme_name(e.scheme) << ',' << montecarlo::quantity_name(e.quantity) << ','
       << format_float(e.mean) << ',' << format_float(e.ci95_halfwidth) << ',' << e.trials
       << '\n';
  }
  return os.str();
}

}  // namespace twsec::csv
