#include "cfs/space.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "cfs/error.hpp"

namespace cfs {

std::optional<std::size_t> Coordinate::label_index(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

CoordSet::CoordSet(std::initializer_list<std::size_t> positions) {
  for (auto p : positions) bits_ |= std::uint64_t{1} << p;
}

CoordSet CoordSet::first(std::size_t count) {
  return from_bits(count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
}

std::size_t CoordSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> CoordSet::members() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

namespace {

std::vector<std::string> worlds_in_order(const std::vector<Coordinate>& coords) {
  std::vector<std::string> worlds;
  for (const auto& c : coords) {
    if (std::find(worlds.begin(), worlds.end(), c.world) == worlds.end()) worlds.push_back(c.world);
  }
  return worlds;
}

}  // namespace

SpaceSchema::SpaceSchema(std::vector<Coordinate> coords)
    : SpaceSchema(coords, worlds_in_order(coords)) {}

SpaceSchema::SpaceSchema(std::vector<Coordinate> coords, std::vector<std::string> worlds)
    : coords_(std::move(coords)), worlds_(std::move(worlds)) {
  if (coords_.size() > kMaxCoordinates) {
    throw SchemaError("schema has " + std::to_string(coords_.size()) + " coordinates; at most " +
                      std::to_string(kMaxCoordinates) + " are supported");
  }
  {
    std::set<std::string> seen(worlds_.begin(), worlds_.end());
    if (seen.size() != worlds_.size()) throw SchemaError("duplicate world identifier");
  }
  std::set<std::pair<std::string, std::string>> keys;
  world_of_.reserve(coords_.size());
  for (const auto& c : coords_) {
    if (c.labels.empty()) throw SchemaError("coordinate " + c.qualified() + " has no labels");
    std::set<std::string> labels(c.labels.begin(), c.labels.end());
    if (labels.size() != c.labels.size()) {
      throw SchemaError("coordinate " + c.qualified() + " has duplicate labels");
    }
    if (!keys.emplace(c.world, c.name).second) {
      throw SchemaError("duplicate coordinate " + c.qualified());
    }
    auto w = std::find(worlds_.begin(), worlds_.end(), c.world);
    if (w == worlds_.end()) throw SchemaError("coordinate " + c.qualified() + " names an undeclared world");
    world_of_.push_back(static_cast<std::size_t>(w - worlds_.begin()));
  }
  stride_.assign(coords_.size(), 1);
  outcome_count_ = 1;
  for (std::size_t i = coords_.size(); i-- > 0;) {
    stride_[i] = outcome_count_;
    outcome_count_ *= coords_[i].labels.size();
    if (outcome_count_ > kMaxOutcomes) {
      throw SchemaError("schema exceeds " + std::to_string(kMaxOutcomes) + " outcomes");
    }
  }
}

std::optional<std::size_t> SpaceSchema::find(std::string_view world, std::string_view name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].world == world && coords_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t SpaceSchema::require(std::string_view qualified) const {
  auto dot = qualified.find('.');
  if (dot != std::string_view::npos) {
    if (auto p = find(qualified.substr(0, dot), qualified.substr(dot + 1))) return *p;
  }
  throw SchemaError("unknown coordinate '" + std::string(qualified) + "'");
}

std::size_t SpaceSchema::require_label(std::size_t position, std::string_view label) const {
  if (auto l = coords_.at(position).label_index(label)) return *l;
  throw SchemaError("unknown label '" + std::string(label) + "' for coordinate " +
                    coords_[position].qualified());
}

std::optional<std::size_t> SpaceSchema::world_index(std::string_view world) const {
  for (std::size_t j = 0; j < worlds_.size(); ++j) {
    if (worlds_[j] == world) return j;
  }
  return std::nullopt;
}

CoordSet SpaceSchema::world_coords(std::size_t world) const {
  CoordSet s;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (world_of_[i] == world) s = s.with(i);
  }
  return s;
}

Outcome SpaceSchema::decode(std::size_t outcome) const {
  Outcome o;
  o.values.reserve(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) o.values.push_back(label(outcome, i));
  return o;
}

std::size_t SpaceSchema::encode(std::span<const std::size_t> labels) const {
  if (labels.size() != coords_.size()) throw SchemaError("outcome has the wrong number of coordinates");
  std::size_t index = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (labels[i] >= coords_[i].labels.size()) {
      throw SchemaError("label index out of range for " + coords_[i].qualified());
    }
    index += labels[i] * stride_[i];
  }
  return index;
}

std::size_t SpaceSchema::projection_count(CoordSet s) const {
  std::size_t n = 1;
  for (auto i : s.members()) n *= coords_.at(i).labels.size();
  return n;
}

std::size_t SpaceSchema::project(std::size_t outcome, CoordSet s) const {
  std::size_t index = 0;
  for (auto i : s.members()) index = index * coords_[i].labels.size() + label(outcome, i);
  return index;
}

std::vector<std::size_t> SpaceSchema::projection_map(CoordSet s) const {
  const auto members = s.members();
  std::vector<std::size_t> map(outcome_count_);
  for (std::size_t w = 0; w < outcome_count_; ++w) {
    std::size_t index = 0;
    for (auto i : members) index = index * coords_[i].labels.size() + label(w, i);
    map[w] = index;
  }
  return map;
}

PartialOutcome SpaceSchema::decode_partial(CoordSet s, std::size_t index) const {
  PartialOutcome p{s, {}};
  auto members = s.members();
  p.values.assign(members.size(), 0);
  for (std::size_t k = members.size(); k-- > 0;) {
    auto radix = coords_[members[k]].labels.size();
    p.values[k] = index % radix;
    index /= radix;
  }
  return p;
}

std::size_t SpaceSchema::encode_partial(const PartialOutcome& partial) const {
  auto members = partial.on.members();
  if (members.size() != partial.values.size()) throw SchemaError("partial outcome size mismatch");
  std::size_t index = 0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    auto radix = coords_.at(members[k]).labels.size();
    if (partial.values[k] >= radix) throw SchemaError("label index out of range for " + coords_[members[k]].qualified());
    index = index * radix + partial.values[k];
  }
  return index;
}

std::size_t SpaceSchema::join(CoordSet s, std::size_t s_index, CoordSet r, std::size_t r_index) const {
  auto ps = decode_partial(s, s_index);
  auto pr = decode_partial(r, r_index);
  CoordSet joined = s | r;
  PartialOutcome out{joined, {}};
  std::size_t a = 0, b = 0;
  for (auto i : joined.members()) {
    out.values.push_back(s.contains(i) ? ps.values[a++] : pr.values[b++]);
  }
  return encode_partial(out);
}

std::size_t SpaceSchema::restrict_partial(CoordSet s, std::size_t s_index, CoordSet r) const {
  auto ps = decode_partial(s, s_index);
  PartialOutcome out{r, {}};
  std::size_t k = 0;
  for (auto i : s.members()) {
    if (r.contains(i)) out.values.push_back(ps.values[k]);
    ++k;
  }
  return encode_partial(out);
}

SpaceSchema SpaceSchema::restrict(CoordSet s) const {
  std::vector<Coordinate> kept;
  for (auto i : s.members()) kept.push_back(coords_.at(i));
  std::vector<std::string> worlds;
  for (const auto& w : worlds_) {
    if (std::any_of(kept.begin(), kept.end(), [&](const Coordinate& c) { return c.world == w; })) {
      worlds.push_back(w);
    }
  }
  return SpaceSchema(std::move(kept), std::move(worlds));
}

std::string SpaceSchema::describe(CoordSet s) const {
  std::string out = "{";
  bool first = true;
  for (auto i : s.members()) {
    if (!first) out += ", ";
    out += coords_.at(i).qualified();
    first = false;
  }
  return out + "}";
}

std::string SpaceSchema::describe_outcome(std::size_t outcome) const {
  return describe_partial(all(), outcome);
}

std::string SpaceSchema::describe_partial(CoordSet s, std::size_t index) const {
  auto p = decode_partial(s, index);
  std::string out = "(";
  std::size_t k = 0;
  for (auto i : s.members()) {
    if (k > 0) out += ", ";
    out += coords_[i].qualified() + "=" + coords_[i].labels[p.values[k]];
    ++k;
  }
  return out + ")";
}

SchemaPtr make_schema(std::vector<Coordinate> coords) {
  return std::make_shared<const SpaceSchema>(std::move(coords));
}

SchemaPtr make_schema(std::vector<Coordinate> coords, std::vector<std::string> worlds) {
  return std::make_shared<const SpaceSchema>(std::move(coords), std::move(worlds));
}

bool same_schema(const SchemaPtr& a, const SchemaPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_schema(const SchemaPtr& a, const SchemaPtr& b, std::string_view what) {
  if (!same_schema(a, b)) throw SchemaError(std::string(what) + ": schema mismatch");
}

PartialOutcome project(const SpaceSchema& schema, const Outcome& outcome, CoordSet s) {
  PartialOutcome p{s, {}};
  for (auto i : s.members()) {
    if (i >= outcome.values.size() || i >= schema.coord_count()) throw SchemaError("projection outside schema");
    p.values.push_back(outcome.values[i]);
  }
  return p;
}

// Event

Event::Event(SchemaPtr schema, std::vector<bool> members)
    : schema_(std::move(schema)), members_(std::move(members)) {
  if (members_.size() != schema_->outcome_count()) throw SchemaError("event size does not match schema");
}

Event Event::none(SchemaPtr schema) {
  auto n = schema->outcome_count();
  return Event(std::move(schema), std::vector<bool>(n, false));
}

Event Event::all(SchemaPtr schema) {
  auto n = schema->outcome_count();
  return Event(std::move(schema), std::vector<bool>(n, true));
}

Event Event::singleton(SchemaPtr schema, std::size_t outcome) {
  auto e = none(std::move(schema));
  e.members_.at(outcome) = true;
  return e;
}

Event Event::of(SchemaPtr schema, std::span<const std::size_t> outcomes) {
  auto e = none(std::move(schema));
  for (auto w : outcomes) e.members_.at(w) = true;
  return e;
}

std::size_t Event::size() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::vector<std::size_t> Event::outcomes() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < members_.size(); ++w) {
    if (members_[w]) out.push_back(w);
  }
  return out;
}

namespace {

template <typename Op>
Event combine(const Event& a, const Event& b, Op op) {
  require_same_schema(a.schema_ptr(), b.schema_ptr(), "event operation");
  std::vector<bool> out(a.bits().size());
  for (std::size_t w = 0; w < out.size(); ++w) out[w] = op(a.bits()[w], b.bits()[w]);
  return Event(a.schema_ptr(), std::move(out));
}

}  // namespace

Event Event::operator&(const Event& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && y; });
}
Event Event::operator|(const Event& other) const {
  return combine(*this, other, [](bool x, bool y) { return x || y; });
}
Event Event::operator^(const Event& other) const {
  return combine(*this, other, [](bool x, bool y) { return x != y; });
}
Event Event::operator~() const {
  std::vector<bool> out(members_.size());
  for (std::size_t w = 0; w < out.size(); ++w) out[w] = !members_[w];
  return Event(schema_, std::move(out));
}

bool Event::operator==(const Event& other) const {
  return same_schema(schema_, other.schema_) && members_ == other.members_;
}

Event cylinder(const SchemaPtr& schema, const Assignment& assignment) {
  for (const auto& [coord, label] : assignment) {
    if (coord >= schema->coord_count()) throw SchemaError("cylinder: coordinate out of range");
    if (label >= schema->coord(coord).labels.size()) {
      throw SchemaError("cylinder: label out of range for " + schema->coord(coord).qualified());
    }
  }
  std::vector<bool> members(schema->outcome_count());
  for (std::size_t w = 0; w < members.size(); ++w) {
    members[w] = std::all_of(assignment.begin(), assignment.end(),
                             [&](const auto& a) { return schema->label(w, a.first) == a.second; });
  }
  return Event(schema, std::move(members));
}

Event cylinder(const SchemaPtr& schema,
               const std::vector<std::pair<std::string, std::string>>& assignment) {
  Assignment resolved;
  for (const auto& [coord, label] : assignment) {
    auto position = schema->require(coord);
    resolved.emplace_back(position, schema->require_label(position, label));
  }
  return cylinder(schema, resolved);
}

// Partition

Partition::Partition(SchemaPtr schema, std::vector<std::size_t> block_of)
    : schema_(std::move(schema)), block_of_(std::move(block_of)) {
  if (block_of_.size() != schema_->outcome_count()) throw SchemaError("partition size does not match schema");
  block_count_ = block_of_.empty() ? 0 : *std::max_element(block_of_.begin(), block_of_.end()) + 1;
}

Partition Partition::from_blocks(const SchemaPtr& schema, const std::vector<Event>& blocks) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> block_of(schema->outcome_count(), kUnset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    require_same_schema(schema, blocks[b].schema_ptr(), "partition");
    if (blocks[b].empty()) throw SchemaError("partition block " + std::to_string(b) + " is empty");
    for (auto w : blocks[b].outcomes()) {
      if (block_of[w] != kUnset) throw SchemaError("partition blocks overlap");
      block_of[w] = b;
    }
  }
  if (std::find(block_of.begin(), block_of.end(), kUnset) != block_of.end()) {
    throw SchemaError("partition blocks do not cover the outcome space");
  }
  return Partition(schema, std::move(block_of));
}

std::vector<Event> Partition::blocks() const {
  std::vector<std::vector<bool>> members(block_count_, std::vector<bool>(block_of_.size(), false));
  for (std::size_t w = 0; w < block_of_.size(); ++w) members[block_of_[w]][w] = true;
  std::vector<Event> out;
  out.reserve(block_count_);
  for (auto& m : members) out.emplace_back(schema_, std::move(m));
  return out;
}

Partition atoms_of(const SchemaPtr& schema, CoordSet s) {
  if (!s.subset_of(schema->all())) throw SchemaError("coordinate set outside schema");
  return Partition(schema, schema->projection_map(s));
}

bool is_measurable_wrt(const Event& a, CoordSet s) {
  const auto& schema = a.schema();
  auto map = schema.projection_map(s);
  // Per fiber: 0 = unseen, 1 = all members so far in A, 2 = all outside A.
  std::vector<char> state(schema.projection_count(s), 0);
  for (std::size_t w = 0; w < map.size(); ++w) {
    char here = a.contains(w) ? 1 : 2;
    auto& st = state[map[w]];
    if (st == 0) {
      st = here;
    } else if (st != here) {
      return false;
    }
  }
  return true;
}

}  // namespace cfs
