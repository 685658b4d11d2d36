#pragma once

#include <cstddef>
#include <ostream>
#include <string>

#include "cfs/mechanism.hpp"

namespace cfs {

std::string describe_effect(const SpaceSchema& schema, const EffectVerdict& verdict);
std::string describe_conditional_effect(const SpaceSchema& schema, CoordSet u, const ConditionalEffect& effect);

/// One indented line per axiom or cross-world violation; returns the count.
std::size_t write_violations(const CfSpace& space, std::ostream& out);

/// Full report for `check`: violations, then uncheckable cross-world pairs
/// and kernel coverage notes. Returns the number of violations.
std::size_t write_check_report(const CfSpace& space, std::ostream& out);

}  // namespace cfs
