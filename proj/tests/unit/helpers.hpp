#pragma once

#include <doctest.h>

#include <string>
#include <utility>
#include <vector>

#include "cfs/fixtures.hpp"
#include "cfs/mechanism.hpp"
#include "cfs/space_format.hpp"

namespace cfs {

// doctest prints mpq values through this.
inline doctest::String toString(const Rational& r) { return to_string(r).c_str(); }

}  // namespace cfs

namespace unit {

using Pairs = std::vector<std::pair<std::string, std::string>>;

inline cfs::CfSpace fixture(const char* name) { return cfs::parse_space(*cfs::fixture_text(name)).space(); }

inline cfs::Event ev(const cfs::CfSpace& s, const Pairs& a) { return cfs::cylinder(s.schema_ptr(), a); }

inline cfs::Rational q(long p, long d) {
  cfs::Rational r(p, d);
  r.canonicalize();
  return r;
}

inline cfs::SchemaPtr binary_schema(std::size_t n, const std::string& world = "W") {
  std::vector<cfs::Coordinate> coords;
  for (std::size_t i = 0; i < n; ++i) coords.push_back({world, std::string(1, char('a' + i)), {"0", "1"}});
  return cfs::make_schema(coords);
}

inline cfs::CfSpace do_point(const cfs::CfSpace& s, const std::string& coord, const std::string& label) {
  const auto& schema = s.schema();
  auto pos = schema.require(coord);
  return cfs::intervene(s, cfs::CoordSet{pos}, cfs::dirac(schema, cfs::CoordSet{pos}, schema.require_label(pos, label)));
}

}  // namespace unit
