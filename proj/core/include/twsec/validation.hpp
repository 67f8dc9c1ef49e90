#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twsec::validation {

enum class Level { quick, full };

struct CriterionResult {
  int id = 0;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  // how measured compares to threshold, e.g. "<="
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Executes the full acceptance-criteria suite.  quick shrinks the sample
// sizes (~10x) for smoke runs; full runs the stated scales.  Results are
// deterministic: every criterion uses its own fixed substream seeds.
std::vector<CriterionResult> run_acceptance(Level level, std::ostream* progress = nullptr);

bool all_pass(const std::vector<CriterionResult>& results);

// One line per criterion: "CRITERION <id> PASS|FAIL <name> measured=... threshold=..."
void print_report(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace twsec::validation
