#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfs {

/// One component of one world, e.g. `CF.exam` with labels {P, F}.
struct Coordinate {
  std::string world;
  std::string name;
  std::vector<std::string> labels;

  std::string qualified() const { return world + "." + name; }
  std::optional<std::size_t> label_index(std::string_view label) const;

  bool operator==(const Coordinate&) const = default;
};

/// A subset S of the coordinate positions of a schema. Stored as a bitmask,
/// which bounds schemas at 64 coordinates.
class CoordSet {
 public:
  constexpr CoordSet() = default;
  CoordSet(std::initializer_list<std::size_t> positions);

  static constexpr CoordSet from_bits(std::uint64_t bits) {
    CoordSet s;
    s.bits_ = bits;
    return s;
  }
  /// {0, ..., count-1}
  static CoordSet first(std::size_t count);

  constexpr std::uint64_t bits() const { return bits_; }
  bool contains(std::size_t position) const { return (bits_ >> position) & 1u; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<std::size_t> members() const;

  CoordSet with(std::size_t position) const { return from_bits(bits_ | (std::uint64_t{1} << position)); }
  bool subset_of(CoordSet other) const { return (bits_ & ~other.bits_) == 0; }

  friend CoordSet operator|(CoordSet a, CoordSet b) { return from_bits(a.bits_ | b.bits_); }
  friend CoordSet operator&(CoordSet a, CoordSet b) { return from_bits(a.bits_ & b.bits_); }
  /// Set difference.
  friend CoordSet operator-(CoordSet a, CoordSet b) { return from_bits(a.bits_ & ~b.bits_); }

  auto operator<=>(const CoordSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Label indices, one per schema coordinate, in schema order.
struct Outcome {
  std::vector<std::size_t> values;
  bool operator==(const Outcome&) const = default;
};

/// Labels on the coordinates of `on` only, in schema order.
struct PartialOutcome {
  CoordSet on;
  std::vector<std::size_t> values;
  bool operator==(const PartialOutcome&) const = default;
};

/// (coordinate position, label index) pairs.
using Assignment = std::vector<std::pair<std::size_t, std::size_t>>;

/// The finite product space: an ordered list of coordinates, each owned by a
/// world. Outcomes are numbered in mixed radix with the first coordinate most
/// significant, so outcome order is lexicographic in schema order.
class SpaceSchema {
 public:
  static constexpr std::size_t kMaxOutcomes = std::size_t{1} << 20;
  static constexpr std::size_t kMaxCoordinates = 64;

  /// Worlds are ordered by first appearance.
  explicit SpaceSchema(std::vector<Coordinate> coords);
  SpaceSchema(std::vector<Coordinate> coords, std::vector<std::string> worlds);

  const std::vector<Coordinate>& coords() const { return coords_; }
  const Coordinate& coord(std::size_t position) const { return coords_[position]; }
  std::size_t coord_count() const { return coords_.size(); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  std::size_t outcome_count() const { return outcome_count_; }

  std::optional<std::size_t> find(std::string_view world, std::string_view name) const;
  /// Looks up "world.name"; throws SchemaError when absent.
  std::size_t require(std::string_view qualified) const;
  /// Throws SchemaError when the label is not in the coordinate's list.
  std::size_t require_label(std::size_t position, std::string_view label) const;

  std::optional<std::size_t> world_index(std::string_view world) const;
  std::size_t world_of(std::size_t position) const { return world_of_[position]; }
  CoordSet world_coords(std::size_t world) const;
  CoordSet all() const { return CoordSet::first(coords_.size()); }

  std::size_t label(std::size_t outcome, std::size_t position) const {
    return (outcome / stride_[position]) % coords_[position].labels.size();
  }
  Outcome decode(std::size_t outcome) const;
  std::size_t encode(std::span<const std::size_t> labels) const;

  /// |Omega_S|
  std::size_t projection_count(CoordSet s) const;
  /// Index of omega_S in Omega_S (mixed radix over S in schema order).
  std::size_t project(std::size_t outcome, CoordSet s) const;
  /// project() for every outcome, indexed by outcome.
  std::vector<std::size_t> projection_map(CoordSet s) const;
  PartialOutcome decode_partial(CoordSet s, std::size_t index) const;
  std::size_t encode_partial(const PartialOutcome& partial) const;
  /// Joins omega_S and omega_R (S, R disjoint) into an index of Omega_{S u R}.
  std::size_t join(CoordSet s, std::size_t s_index, CoordSet r, std::size_t r_index) const;
  /// Restricts an index of Omega_S to Omega_R for R a subset of S.
  std::size_t restrict_partial(CoordSet s, std::size_t s_index, CoordSet r) const;

  /// The sub-schema of the coordinates in S, keeping their order and worlds.
  SpaceSchema restrict(CoordSet s) const;

  std::string describe(CoordSet s) const;
  std::string describe_outcome(std::size_t outcome) const;
  std::string describe_partial(CoordSet s, std::size_t index) const;

  bool operator==(const SpaceSchema& other) const {
    return coords_ == other.coords_ && worlds_ == other.worlds_;
  }

 private:
  std::vector<Coordinate> coords_;
  std::vector<std::string> worlds_;
  std::vector<std::size_t> world_of_;
  std::vector<std::size_t> stride_;
  std::size_t outcome_count_ = 1;
};

using SchemaPtr = std::shared_ptr<const SpaceSchema>;

SchemaPtr make_schema(std::vector<Coordinate> coords);
SchemaPtr make_schema(std::vector<Coordinate> coords, std::vector<std::string> worlds);

/// Pointer-equal or structurally equal.
bool same_schema(const SchemaPtr& a, const SchemaPtr& b);
/// Throws SchemaError unless same_schema().
void require_same_schema(const SchemaPtr& a, const SchemaPtr& b, std::string_view what);

/// omega restricted to S.
PartialOutcome project(const SpaceSchema& schema, const Outcome& outcome, CoordSet s);

/// An explicit set of outcomes of one schema.
class Event {
 public:
  Event(SchemaPtr schema, std::vector<bool> members);

  static Event none(SchemaPtr schema);
  static Event all(SchemaPtr schema);
  static Event singleton(SchemaPtr schema, std::size_t outcome);
  static Event of(SchemaPtr schema, std::span<const std::size_t> outcomes);

  const SchemaPtr& schema_ptr() const { return schema_; }
  const SpaceSchema& schema() const { return *schema_; }

  bool contains(std::size_t outcome) const { return members_[outcome]; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_all() const { return size() == members_.size(); }
  std::vector<std::size_t> outcomes() const;
  const std::vector<bool>& bits() const { return members_; }

  Event operator&(const Event& other) const;
  Event operator|(const Event& other) const;
  /// Symmetric difference.
  Event operator^(const Event& other) const;
  Event operator~() const;

  bool operator==(const Event& other) const;

 private:
  SchemaPtr schema_;
  std::vector<bool> members_;
};

/// All outcomes agreeing with the assignment; the empty assignment gives Omega.
Event cylinder(const SchemaPtr& schema, const Assignment& assignment);
/// Name-based form: pairs of ("F.class", "Y"). Throws SchemaError on unknown
/// coordinates or labels.
Event cylinder(const SchemaPtr& schema,
               const std::vector<std::pair<std::string, std::string>>& assignment);

/// A finite partition of Omega; the atoms of a finite sub-sigma-algebra.
class Partition {
 public:
  Partition(SchemaPtr schema, std::vector<std::size_t> block_of);
  /// Throws SchemaError unless the events are nonempty, disjoint and cover Omega.
  static Partition from_blocks(const SchemaPtr& schema, const std::vector<Event>& blocks);

  const SchemaPtr& schema_ptr() const { return schema_; }
  std::size_t block_count() const { return block_count_; }
  std::size_t block_of(std::size_t outcome) const { return block_of_[outcome]; }
  const std::vector<std::size_t>& assignment() const { return block_of_; }
  std::vector<Event> blocks() const;

 private:
  SchemaPtr schema_;
  std::vector<std::size_t> block_of_;
  std::size_t block_count_ = 0;
};

/// The fibers of project(., S); blocks are numbered by the index of omega_S.
Partition atoms_of(const SchemaPtr& schema, CoordSet s);

/// True iff A is a union of S-cylinders, i.e. A is in H_S.
bool is_measurable_wrt(const Event& a, CoordSet s);

}  // namespace cfs
