#include "cfs/counterfactual.hpp"

#include <set>

#include "cfs/error.hpp"

namespace cfs {

namespace {

std::vector<Rational> pushforward(const Measure& m, const std::vector<std::size_t>& map, std::size_t size) {
  std::vector<Rational> out(size, 0);
  for (std::size_t w = 0; w < map.size(); ++w) {
    if (m.weight(w) != 0) out[map[w]] += m.weight(w);
  }
  return out;
}

}  // namespace

CrossWorldReport check_cross_world(const CfSpace& space) {
  CrossWorldReport report;
  const auto& schema = space.schema();
  const auto& mech = space.mechanism();
  const std::size_t worlds = schema.worlds().size();
  std::vector<std::vector<std::size_t>> maps;
  std::vector<std::size_t> sizes;
  for (std::size_t j = 0; j < worlds; ++j) {
    maps.push_back(schema.projection_map(schema.world_coords(j)));
    sizes.push_back(schema.projection_count(schema.world_coords(j)));
  }
  for (const auto& [s, ks] : mech) {
    for (std::size_t j = 0; j < worlds; ++j) {
      const CoordSet reduced = s & schema.world_coords(j);
      if (reduced == s) continue;
      const auto* kr = mech.find(reduced);
      if (!kr) {
        report.uncheckable.push_back({s, j, reduced});
        continue;
      }
      bool missing = false;
      for (std::size_t e = 0; e < ks.entry_count(); ++e) {
        const auto* m = ks.find(e);
        if (!m) continue;
        const auto* mr = kr->find(schema.restrict_partial(s, e, reduced));
        if (!mr) {
          missing = true;
          continue;
        }
        auto a = pushforward(*m, maps[j], sizes[j]);
        auto b = pushforward(*mr, maps[j], sizes[j]);
        for (std::size_t x = 0; x < a.size(); ++x) {
          if (a[x] != b[x]) {
            report.violations.push_back({s, j, e, x, a[x], b[x]});
            break;
          }
        }
      }
      if (missing) report.uncheckable.push_back({s, j, reduced});
    }
  }
  return report;
}

std::string describe(const SpaceSchema& schema, const CrossWorldViolation& v) {
  const CoordSet wj = schema.world_coords(v.world);
  return "K_" + schema.describe(v.on) + schema.describe_partial(v.on, v.entry) + " gives " +
         to_string(v.value) + " to " + schema.describe_partial(wj, v.atom) + " but K_" +
         schema.describe(v.on & wj) + " gives " + to_string(v.reference);
}

EventClassification classify_event(const Event& a) {
  if (a.empty() || a.is_all()) return {EventClass::AllWorlds, std::nullopt};
  const auto& schema = a.schema();
  for (std::size_t j = 0; j < schema.worlds().size(); ++j) {
    if (is_measurable_wrt(a, schema.world_coords(j))) return {EventClass::SingleWorld, j};
  }
  return {EventClass::CrossWorld, std::nullopt};
}

// WorldMirror

WorldMirror::WorldMirror(SchemaPtr schema, const std::string& first, const std::string& second)
    : schema_(std::move(schema)), first_(first), second_(second) {
  const auto& sc = *schema_;
  auto i = sc.world_index(first);
  auto k = sc.world_index(second);
  if (!i || !k) throw SchemaError("mirror names an unknown world");
  if (*i == *k) throw SchemaError("a world cannot mirror itself");
  image_.resize(sc.coord_count());
  for (std::size_t p = 0; p < sc.coord_count(); ++p) image_[p] = p;
  auto a = sc.world_coords(*i).members();
  auto b = sc.world_coords(*k).members();
  if (a.size() != b.size()) throw SchemaError("worlds " + first + " and " + second + " differ in size");
  for (auto p : a) {
    const auto& c = sc.coord(p);
    auto q = sc.find(second, c.name);
    if (!q) throw SchemaError("world " + second + " lacks component " + c.name);
    if (sc.coord(*q).labels != c.labels) throw SchemaError("component " + c.name + " has different labels");
    image_[p] = *q;
    image_[*q] = p;
  }
}

CoordSet WorldMirror::image(CoordSet s) const {
  CoordSet out;
  for (auto p : s.members()) out = out.with(image_[p]);
  return out;
}

std::size_t WorldMirror::swap(std::size_t outcome) const {
  auto values = schema_->decode(outcome).values;
  std::vector<std::size_t> swapped(values.size());
  for (std::size_t p = 0; p < values.size(); ++p) swapped[image_[p]] = values[p];
  return schema_->encode(swapped);
}

std::size_t WorldMirror::swap_partial(CoordSet s, std::size_t index) const {
  auto partial = schema_->decode_partial(s, index);
  std::vector<std::size_t> by_position(schema_->coord_count(), 0);
  std::size_t k = 0;
  for (auto p : s.members()) by_position[image_[p]] = partial.values[k++];
  PartialOutcome out{image(s), {}};
  for (auto p : out.on.members()) out.values.push_back(by_position[p]);
  return schema_->encode_partial(out);
}

SymmetryReport is_symmetric(const CfSpace& space, const WorldMirror& mirror) {
  SymmetryReport report;
  const auto& p = space.measure();
  const std::size_t n = space.schema().outcome_count();
  std::vector<std::size_t> swap(n);
  for (std::size_t w = 0; w < n; ++w) swap[w] = mirror.swap(w);
  for (std::size_t w = 0; w < n; ++w) {
    if (p.weight(w) != p.weight(swap[w])) {
      report.measure_symmetric = false;
      report.measure_witness = w;
      break;
    }
  }
  for (const auto& [r, kr] : space.mechanism()) {
    const CoordSet image = mirror.image(r);
    const auto* ki = space.mechanism().find(image);
    if (!ki) {
      report.uncheckable.push_back(r);
      continue;
    }
    for (std::size_t e = 0; e < kr.entry_count(); ++e) {
      const auto* m = kr.find(e);
      const auto* mi = ki->find(mirror.swap_partial(r, e));
      if (!m || !mi) continue;
      for (std::size_t w = 0; w < n; ++w) {
        if (m->weight(w) != mi->weight(swap[w])) {
          report.kernel_failures.emplace_back(r, e);
          break;
        }
      }
    }
  }
  return report;
}

CoordSet compress(CoordSet s, CoordSet keep) {
  CoordSet out;
  std::size_t k = 0;
  for (auto p : keep.members()) {
    if (s.contains(p)) out = out.with(k);
    ++k;
  }
  return out;
}

CfSpace marginalize(const CfSpace& space, CoordSet keep, bool allow_world_drop) {
  const auto& schema = space.schema();
  if (!keep.subset_of(schema.all())) throw SchemaError("marginalize: coordinates outside the schema");
  for (std::size_t j = 0; j < schema.worlds().size(); ++j) {
    if ((keep & schema.world_coords(j)).empty() && !schema.world_coords(j).empty() && !allow_world_drop) {
      throw SchemaError("marginalize would drop world " + schema.worlds()[j] + " entirely");
    }
  }
  auto sub = std::make_shared<const SpaceSchema>(schema.restrict(keep));
  const auto map = schema.projection_map(keep);
  Measure p(sub, pushforward(space.measure(), map, sub->outcome_count()));
  Mechanism mech;
  for (const auto& [s, ks] : space.mechanism()) {
    if (!s.subset_of(keep)) continue;
    // Omega_S has the same enumeration in both schemas, so entry indices carry over.
    Kernel k(sub, compress(s, keep));
    for (std::size_t e = 0; e < ks.entry_count(); ++e) {
      if (const auto* m = ks.find(e)) k.set(e, Measure(sub, pushforward(*m, map, sub->outcome_count())));
    }
    mech.add(std::move(k));
  }
  return CfSpace(std::move(p), std::move(mech));
}

SchemaPtr nway_schema(const std::vector<WorldSpec>& worlds) {
  if (worlds.empty()) throw SchemaError("at least one world is required");
  std::vector<Coordinate> coords;
  std::vector<std::string> names;
  for (const auto& w : worlds) {
    names.push_back(w.name);
    for (const auto& [name, labels] : w.components) coords.push_back({w.name, name, labels});
  }
  return make_schema(std::move(coords), std::move(names));
}

CfSpace build_nway(const std::vector<WorldSpec>& worlds, std::vector<Rational> weights,
                   const std::function<Mechanism(const SchemaPtr&)>& mechanism) {
  auto schema = nway_schema(worlds);
  Measure p(schema, std::move(weights));
  if (!mechanism) return CfSpace(std::move(p));
  return CfSpace(std::move(p), mechanism(schema));
}

}  // namespace cfs
