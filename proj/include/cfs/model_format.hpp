#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfs/compilers.hpp"

namespace cfs {

/// Parsed `.scm` file. `coupling` is present for backtracking models; its
/// weights are indexed u * |Omega_U| + u*.
struct ScmDocument {
  std::string name;
  ScmModel model;
  std::optional<std::vector<Rational>> coupling;
  /// Kernel keys over F.V_1..F.V_n, CF.V_1..CF.V_n; absent means all.
  std::optional<std::vector<CoordSet>> kernels;

  ScmOptions options() const;
};

struct PoDocument {
  std::string name;
  PoModel model;
};

/// Both throw ParseError on malformed or inconsistent input.
ScmDocument parse_scm(std::string_view text);
PoDocument parse_po(std::string_view text);

}  // namespace cfs
