#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "cfs/mechanism.hpp"

namespace cfs {

/// Parsed `.cfs` file.
struct SpaceDocument {
  std::string name;
  SchemaPtr schema;
  std::optional<Measure> measure;
  /// Kernels exactly as written; K_empty is not added here.
  Mechanism kernels;
  std::optional<std::pair<std::string, std::string>> mirror;

  /// Needs a measure or a `kernel on {}` block. Throws SchemaError otherwise.
  CfSpace space() const;

  bool operator==(const SpaceDocument& other) const;
};

/// Throws ParseError (with line and column) on lexical, grammatical and
/// semantic errors, including weights that do not sum to one.
SpaceDocument parse_space(std::string_view text);

std::string serialize_space(const SpaceDocument& doc);

/// Document for a space; K_empty is written only when it differs from P.
SpaceDocument document_of(const CfSpace& space, std::string name,
                          std::optional<std::pair<std::string, std::string>> mirror = std::nullopt);

}  // namespace cfs
