#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cfs {

struct ReproLine {
  std::string target;
  std::string label;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// exam, star, disease, disease-asym, dormant, exam-cycle.
const std::vector<std::string>& repro_targets();

/// Recomputes the bundled example values for one target (or "all") and
/// compares them with the shipped expectation table. Throws
/// std::invalid_argument for an unknown target.
std::vector<ReproLine> reproduce(std::string_view target);

}  // namespace cfs
