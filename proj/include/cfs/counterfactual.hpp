#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfs/mechanism.hpp"

namespace cfs {

struct CrossWorldViolation {
  CoordSet on;
  std::size_t world = 0;
  std::size_t entry = 0;
  /// Index of the offending atom of Omega^j (the world-j coordinates).
  std::size_t atom = 0;
  Rational value;
  Rational reference;
};

/// A pair (K_S, K_{S n T^j}) whose reduced side is absent.
struct UncheckablePair {
  CoordSet on;
  std::size_t world = 0;
  CoordSet reduced;
};

struct CrossWorldReport {
  std::vector<CrossWorldViolation> violations;
  std::vector<UncheckablePair> uncheckable;
  bool ok() const { return violations.empty(); }
};

/// For every world j and present kernel K_S: the law of the world-j
/// coordinates under K_S(omega_S) equals the law under K_{S n T^j}.
CrossWorldReport check_cross_world(const CfSpace& space);

std::string describe(const SpaceSchema& schema, const CrossWorldViolation& v);

enum class EventClass { AllWorlds, SingleWorld, CrossWorld };

struct EventClassification {
  EventClass kind;
  std::optional<std::size_t> world;
};

/// The empty event and Omega belong to every world.
EventClassification classify_event(const Event& a);

/// Identification of two worlds with the same components and label lists.
class WorldMirror {
 public:
  /// Throws SchemaError when the worlds do not mirror each other.
  WorldMirror(SchemaPtr schema, const std::string& first, const std::string& second);

  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

  std::size_t image(std::size_t position) const { return image_[position]; }
  CoordSet image(CoordSet s) const;
  /// The outcome with the two worlds' values exchanged.
  std::size_t swap(std::size_t outcome) const;
  /// omega_S to the swapped value, indexed in Omega_{image(S)}.
  std::size_t swap_partial(CoordSet s, std::size_t index) const;

 private:
  SchemaPtr schema_;
  std::string first_;
  std::string second_;
  std::vector<std::size_t> image_;
};

struct SymmetryReport {
  bool measure_symmetric = true;
  std::optional<std::size_t> measure_witness;
  /// (kernel key, entry) pairs whose swapped counterpart disagrees.
  std::vector<std::pair<CoordSet, std::size_t>> kernel_failures;
  /// Kernel keys whose mirror image is absent.
  std::vector<CoordSet> uncheckable;
  bool ok() const { return measure_symmetric && kernel_failures.empty(); }
};

SymmetryReport is_symmetric(const CfSpace& space, const WorldMirror& mirror);

/// Positions of S renumbered inside the sub-schema of `keep`.
CoordSet compress(CoordSet s, CoordSet keep);

/// Pushforward onto the coordinates in `keep`. Kernels on subsets of `keep`
/// survive with their entries pushed forward; the rest are dropped. Dropping
/// every coordinate of a world needs `allow_world_drop`.
CfSpace marginalize(const CfSpace& space, CoordSet keep, bool allow_world_drop = false);

struct WorldSpec {
  std::string name;
  std::vector<std::pair<std::string, std::vector<std::string>>> components;
};

/// Schema for worlds T^1..T^N in the given order.
SchemaPtr nway_schema(const std::vector<WorldSpec>& worlds);

CfSpace build_nway(const std::vector<WorldSpec>& worlds, std::vector<Rational> weights,
                   const std::function<Mechanism(const SchemaPtr&)>& mechanism = {});

}  // namespace cfs
