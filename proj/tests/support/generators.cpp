#include "generators.hpp"

#include <algorithm>
#include <memory>

namespace cfs::testing {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<Rational> random_weights(Rng& rng, std::size_t n, double zero) {
  std::vector<Rational> w(n, 0);
  Rational total = 0;
  for (auto& x : w) {
    if (!chance(rng, zero)) x = static_cast<long>(pick(rng, 1, 4));
    total += x;
  }
  if (total == 0) {
    w[pick(rng, 0, n - 1)] = 1;
    total = 1;
  }
  for (auto& x : w) x /= total;
  return w;
}

Measure random_measure(const SchemaPtr& schema, Rng& rng, double zero) {
  return Measure(schema, random_weights(rng, schema->outcome_count(), zero));
}

Measure world_product(const Measure& q) {
  const auto& sub = q.schema();
  std::vector<Measure> parts;
  std::vector<CoordSet> blocks;
  for (std::size_t j = 0; j < sub.worlds().size(); ++j) {
    blocks.push_back(sub.world_coords(j));
    parts.push_back(marginal(q, blocks.back()));
  }
  std::vector<Rational> w(sub.outcome_count(), 1);
  for (std::size_t o = 0; o < w.size(); ++o) {
    for (std::size_t j = 0; j < blocks.size(); ++j) w[o] *= parts[j].weight(sub.project(o, blocks[j]));
  }
  return Measure(q.schema_ptr(), std::move(w));
}

Measure random_q(const SpaceSchema& schema, CoordSet u, Rng& rng) {
  if (u.empty()) return trivial_measure(schema);
  auto sub = std::make_shared<const SpaceSchema>(schema.restrict(u));
  switch (pick(rng, 0, 2)) {
    case 0:
      return Measure::point(sub, pick(rng, 0, sub->outcome_count() - 1));
    case 1:
      return world_product(random_measure(sub, rng, 0.1));
    default:
      return random_measure(sub, rng, 0.3);
  }
}

SchemaPtr random_schema(Rng& rng, std::size_t worlds, std::size_t max_outcomes, bool mirrored) {
  std::vector<std::string> names;
  if (worlds == 1) {
    names = {"W"};
  } else if (worlds == 2) {
    names = {"F", "CF"};
  } else {
    for (std::size_t j = 0; j < worlds; ++j) names.push_back("W" + std::to_string(j + 1));
  }
  auto labels = [](std::size_t n) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back(std::to_string(i));
    return l;
  };
  const std::string letters = "abcdefghijklmnop";

  std::vector<std::vector<std::size_t>> sizes(worlds);
  std::size_t outcomes = 1;
  auto power = [&](std::size_t x) {
    std::size_t r = 1;
    for (std::size_t j = 0; j < (mirrored ? worlds : 1); ++j) r *= x;
    return r;
  };
  if (mirrored) {
    outcomes = power(2);
    sizes[0].push_back(2);
    while (chance(rng, 0.7)) {
      std::size_t n = chance(rng, 0.25) ? 3 : 2;
      if (outcomes * power(n) > max_outcomes) n = 2;
      if (outcomes * power(n) > max_outcomes) break;
      sizes[0].push_back(n);
      outcomes *= power(n);
    }
    for (std::size_t j = 1; j < worlds; ++j) sizes[j] = sizes[0];
  } else {
    for (std::size_t j = 0; j < worlds; ++j) {
      sizes[j].push_back(2);
      outcomes *= 2;
    }
    while (chance(rng, 0.7)) {
      std::size_t n = chance(rng, 0.25) ? 3 : 2;
      if (outcomes * n > max_outcomes) n = 2;
      if (outcomes * n > max_outcomes) break;
      sizes[pick(rng, 0, worlds - 1)].push_back(n);
      outcomes *= n;
    }
  }
  std::vector<Coordinate> coords;
  for (std::size_t j = 0; j < worlds; ++j) {
    for (std::size_t i = 0; i < sizes[j].size(); ++i) {
      coords.push_back({names[j], std::string(1, letters[i]), labels(sizes[j][i])});
    }
  }
  return make_schema(std::move(coords), names);
}

std::vector<CoordSet> all_subsets(std::size_t coord_count) {
  std::vector<CoordSet> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << coord_count); ++b) out.push_back(CoordSet::from_bits(b));
  return out;
}

CfSpace random_general_space(const SchemaPtr& schema, Rng& rng, double keep, double entries) {
  auto p = random_measure(schema, rng, 0.25);
  Mechanism mech;
  const CoordSet all = schema->all();
  for (auto s : all_subsets(schema->coord_count())) {
    if (s.empty() || !chance(rng, keep)) continue;
    Kernel k(schema, s);
    const CoordSet rest = all - s;
    auto on_s = schema->projection_map(s);
    auto on_rest = schema->projection_map(rest);
    for (std::size_t e = 0; e < schema->projection_count(s); ++e) {
      if (!chance(rng, entries)) continue;
      auto r = random_weights(rng, schema->projection_count(rest), 0.3);
      std::vector<Rational> w(schema->outcome_count(), 0);
      for (std::size_t o = 0; o < w.size(); ++o) {
        if (on_s[o] == e) w[o] = r[on_rest[o]];
      }
      k.set(e, Measure(schema, std::move(w)));
    }
    if (k.present_count() > 0) mech.add(std::move(k));
  }
  return CfSpace(std::move(p), std::move(mech));
}

NoiseModel random_noise_model(const SchemaPtr& schema, Rng& rng, bool mirrored, bool separate) {
  NoiseModel m;
  m.schema = schema;
  const std::size_t worlds = schema->worlds().size();
  std::size_t components = separate ? worlds * pick(rng, 1, 2) : pick(rng, 1, 3);
  for (std::size_t c = 0; c < components; ++c) {
    m.noise_sizes.push_back(separate ? 2 : pick(rng, 2, 3));
    m.noise_laws.push_back(random_weights(rng, m.noise_sizes.back(), 0.15));
  }
  const std::size_t n = schema->coord_count();
  m.noise_of.resize(n);
  m.parents.resize(n);
  m.table.resize(n);
  const std::size_t generated = mirrored ? n / 2 : n;
  for (std::size_t c = 0; c < generated; ++c) {
    for (std::size_t k = 0; k < components; ++k) {
      if (separate && k % worlds != schema->world_of(c)) continue;
      if (chance(rng, 0.5)) m.noise_of[c].push_back(k);
    }
    for (std::size_t p = 0; p < c; ++p) {
      if (schema->world_of(p) == schema->world_of(c) && chance(rng, 0.4)) m.parents[c].push_back(p);
    }
    std::size_t rows = 1;
    for (auto k : m.noise_of[c]) rows *= m.noise_sizes[k];
    for (auto p : m.parents[c]) rows *= schema->coord(p).labels.size();
    for (std::size_t r = 0; r < rows; ++r) m.table[c].push_back(pick(rng, 0, schema->coord(c).labels.size() - 1));
  }
  for (std::size_t c = generated; c < n; ++c) {
    m.noise_of[c] = m.noise_of[c - generated];
    m.table[c] = m.table[c - generated];
    for (auto p : m.parents[c - generated]) m.parents[c].push_back(p + generated);
  }
  return m;
}

Measure noise_law(const NoiseModel& model, CoordSet s, std::size_t entry) {
  const auto& schema = *model.schema;
  const std::size_t n = schema.coord_count();
  auto fixed = schema.decode_partial(s, entry);
  std::vector<std::size_t> fixed_value(n, 0);
  {
    std::size_t i = 0;
    for (auto pos : s.members()) fixed_value[pos] = fixed.values[i++];
  }
  std::size_t joint = 1;
  for (auto size : model.noise_sizes) joint *= size;
  std::vector<Rational> w(schema.outcome_count(), 0);
  std::vector<std::size_t> noise(model.noise_sizes.size());
  std::vector<std::size_t> values(n);
  for (std::size_t u = 0; u < joint; ++u) {
    Rational weight = 1;
    std::size_t rest = u;
    for (std::size_t k = model.noise_sizes.size(); k-- > 0;) {
      noise[k] = rest % model.noise_sizes[k];
      rest /= model.noise_sizes[k];
      weight *= model.noise_laws[k][noise[k]];
    }
    if (weight == 0) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (s.contains(c)) {
        values[c] = fixed_value[c];
        continue;
      }
      std::size_t row = 0;
      for (auto k : model.noise_of[c]) row = row * model.noise_sizes[k] + noise[k];
      for (auto p : model.parents[c]) row = row * schema.coord(p).labels.size() + values[p];
      values[c] = model.table[c][row];
    }
    w[schema.encode(values)] += weight;
  }
  return Measure(model.schema, std::move(w));
}

CfSpace noise_space(const NoiseModel& model, Rng& rng, double keep, double entries) {
  const auto& schema = *model.schema;
  Mechanism mech;
  for (auto s : all_subsets(schema.coord_count())) {
    if (s.empty() || !chance(rng, keep)) continue;
    Kernel k(model.schema, s);
    for (std::size_t e = 0; e < schema.projection_count(s); ++e) {
      if (chance(rng, entries)) k.set(e, noise_law(model, s, e));
    }
    if (k.present_count() > 0) mech.add(std::move(k));
  }
  return CfSpace(noise_law(model, CoordSet{}, 0), std::move(mech));
}

CfSpace random_space(Rng& rng, std::size_t max_outcomes) {
  const bool general = chance(rng, 0.35);
  const std::size_t worlds = general ? 1 : pick(rng, 1, 3);
  const bool mirrored = worlds == 2 && chance(rng, 0.4);
  auto schema = random_schema(rng, worlds, max_outcomes, mirrored);
  double keep = 1.0;
  if (schema->outcome_count() > 32) keep = 10.0 / static_cast<double>(std::uint64_t{1} << schema->coord_count());
  const double entries = chance(rng, 0.25) ? 0.7 : 1.0;
  if (general) return random_general_space(schema, rng, keep, entries);
  return noise_space(random_noise_model(schema, rng, mirrored), rng, keep, entries);
}

ScmModel random_scm(Rng& rng, std::size_t endogenous, std::size_t exogenous) {
  ScmModel m;
  for (std::size_t k = 0; k < exogenous; ++k) m.exogenous.push_back({"U" + std::to_string(k + 1), {"0", "1"}});
  m.noise = random_weights(rng, std::size_t{1} << exogenous, 0.2);
  std::vector<std::size_t> order(endogenous);
  for (std::size_t i = 0; i < endogenous; ++i) {
    order[i] = i;
    m.endogenous.push_back({"V" + std::to_string(i + 1), {"0", "1"}});
  }
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < endogenous; ++i) {
    Equation eq;
    eq.target = m.endogenous[i].name;
    auto rank = std::find(order.begin(), order.end(), i) - order.begin();
    for (std::ptrdiff_t r = 0; r < rank; ++r) {
      if (chance(rng, 0.5)) eq.parents.push_back(m.endogenous[order[r]].name);
    }
    for (const auto& u : m.exogenous) {
      if (chance(rng, 0.6)) eq.noise.push_back(u.name);
    }
    std::size_t rows = std::size_t{1} << (eq.parents.size() + eq.noise.size());
    for (std::size_t r = 0; r < rows; ++r) eq.table.push_back(pick(rng, 0, 1));
    m.equations.push_back(std::move(eq));
  }
  return m;
}

PoModel random_po(Rng& rng, std::size_t units) {
  PoModel m;
  for (std::size_t u = 0; u < units; ++u) m.units.push_back("u" + std::to_string(u + 1));
  m.prior = random_weights(rng, units, 0.1);
  m.endogenous = {{"X", {"0", "1"}}, {"Y", {"0", "1"}}};
  m.observed.assign(2, {});
  for (auto& f : m.observed) {
    for (std::size_t u = 0; u < units; ++u) f.push_back(pick(rng, 0, 1));
  }
  for (const char* x : {"0", "1"}) {
    PotentialOutcome po{"Y", {{"X", x}}, {}};
    for (std::size_t u = 0; u < units; ++u) po.values.push_back(pick(rng, 0, 1));
    m.potentials.push_back(std::move(po));
  }
  return m;
}

Event random_event(const SchemaPtr& schema, Rng& rng, double density) {
  std::vector<bool> bits(schema->outcome_count());
  for (std::size_t o = 0; o < bits.size(); ++o) bits[o] = chance(rng, density);
  return Event(schema, std::move(bits));
}

Event random_event_on(const SchemaPtr& schema, CoordSet s, Rng& rng) {
  std::vector<bool> chosen(schema->projection_count(s));
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = chance(rng, 0.5);
  auto map = schema->projection_map(s);
  std::vector<bool> bits(schema->outcome_count());
  for (std::size_t o = 0; o < bits.size(); ++o) bits[o] = chosen[map[o]];
  return Event(schema, std::move(bits));
}

CoordSet random_subset(CoordSet of, Rng& rng) {
  CoordSet out;
  for (auto pos : of.members()) {
    if (chance(rng, 0.5)) out = out.with(pos);
  }
  return out;
}

}  // namespace cfs::testing
