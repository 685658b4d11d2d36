#include "cfs/compilers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cfs/error.hpp"

namespace cfs {

namespace {

struct PreparedScm {
  std::vector<std::size_t> order;
  std::vector<std::size_t> endo_sizes;
  std::vector<std::size_t> exo_sizes;
  // Per endogenous variable, in endogenous order.
  std::vector<std::vector<std::size_t>> parents;
  std::vector<std::vector<std::size_t>> noise;
  std::vector<const Equation*> equation;
};

std::size_t product_size(const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& which) {
  std::size_t n = 1;
  for (auto i : which) n *= sizes[i];
  return n;
}

// Callers may write weights as Rational(p, q) without reducing them; GMP
// arithmetic needs canonical operands.
std::vector<Rational> canonical(std::vector<Rational> w) {
  for (auto& x : w) x.canonicalize();
  return w;
}

ScmModel canonical(const ScmModel& m) {
  ScmModel out = m;
  out.noise = canonical(m.noise);
  return out;
}

PreparedScm prepare(const ScmModel& model) {
  PreparedScm prep;
  std::map<std::string, std::size_t> endo, exo;
  std::set<std::string> names;
  for (std::size_t i = 0; i < model.exogenous.size(); ++i) {
    const auto& v = model.exogenous[i];
    if (v.labels.empty()) throw CompileError("exogenous variable " + v.name + " has no labels");
    if (!names.insert(v.name).second) throw CompileError("duplicate variable " + v.name);
    exo[v.name] = i;
    prep.exo_sizes.push_back(v.labels.size());
  }
  for (std::size_t i = 0; i < model.endogenous.size(); ++i) {
    const auto& v = model.endogenous[i];
    if (v.labels.empty()) throw CompileError("endogenous variable " + v.name + " has no labels");
    if (!names.insert(v.name).second) throw CompileError("duplicate variable " + v.name);
    endo[v.name] = i;
    prep.endo_sizes.push_back(v.labels.size());
  }
  const std::size_t n = model.endogenous.size();
  prep.parents.resize(n);
  prep.noise.resize(n);
  prep.equation.assign(n, nullptr);
  for (const auto& eq : model.equations) {
    auto it = endo.find(eq.target);
    if (it == endo.end()) throw CompileError("equation for unknown endogenous variable " + eq.target);
    const std::size_t i = it->second;
    if (prep.equation[i]) throw CompileError("two equations for " + eq.target);
    prep.equation[i] = &eq;
    for (const auto& p : eq.parents) {
      auto pi = endo.find(p);
      if (pi == endo.end()) throw CompileError(eq.target + ": unknown parent " + p);
      if (pi->second == i) throw CompileError(eq.target + " lists itself as a parent");
      prep.parents[i].push_back(pi->second);
    }
    for (const auto& u : eq.noise) {
      auto ui = exo.find(u);
      if (ui == exo.end()) throw CompileError(eq.target + ": unknown noise variable " + u);
      prep.noise[i].push_back(ui->second);
    }
    const std::size_t rows = product_size(prep.endo_sizes, prep.parents[i]) * product_size(prep.exo_sizes, prep.noise[i]);
    if (eq.table.size() != rows) {
      throw CompileError(eq.target + ": table has " + std::to_string(eq.table.size()) + " rows, expected " +
                         std::to_string(rows));
    }
    for (auto value : eq.table) {
      if (value >= prep.endo_sizes[i]) throw CompileError(eq.target + ": table value out of range");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!prep.equation[i]) throw CompileError("no equation for " + model.endogenous[i].name);
  }
  const std::size_t noise_count = product_size(prep.exo_sizes, [&] {
    std::vector<std::size_t> all(prep.exo_sizes.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    return all;
  }());
  if (model.noise.size() != noise_count) {
    throw CompileError("noise law has " + std::to_string(model.noise.size()) + " weights, expected " +
                       std::to_string(noise_count));
  }
  Rational total = 0;
  for (auto w : model.noise) {
    w.canonicalize();
    if (w < 0) throw CompileError("negative noise weight");
    total += w;
  }
  if (total != 1) throw CompileError("noise law sums to " + to_string(total));

  // Kahn's algorithm, lowest index first for a deterministic order.
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto p : prep.parents[i]) {
      ++indegree[i];
      children[p].push_back(i);
    }
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    auto i = *ready.begin();
    ready.erase(ready.begin());
    prep.order.push_back(i);
    for (auto c : children[i]) {
      if (--indegree[c] == 0) ready.insert(c);
    }
  }
  if (prep.order.size() != n) throw CompileError("cyclic SCM not compilable");
  return prep;
}

std::vector<std::size_t> decode_noise(const PreparedScm& prep, std::size_t index) {
  std::vector<std::size_t> values(prep.exo_sizes.size());
  for (std::size_t k = values.size(); k-- > 0;) {
    values[k] = index % prep.exo_sizes[k];
    index /= prep.exo_sizes[k];
  }
  return values;
}

std::vector<std::size_t> solve(const PreparedScm& prep, const std::vector<std::size_t>& noise_values,
                               const std::vector<std::optional<std::size_t>>& intervened) {
  std::vector<std::size_t> values(prep.endo_sizes.size(), 0);
  for (auto i : prep.order) {
    if (intervened[i]) {
      values[i] = *intervened[i];
      continue;
    }
    std::size_t row = 0;
    for (auto p : prep.parents[i]) row = row * prep.endo_sizes[p] + values[p];
    for (auto u : prep.noise[i]) row = row * prep.exo_sizes[u] + noise_values[u];
    values[i] = prep.equation[i]->table[row];
  }
  return values;
}

SchemaPtr two_world_schema(const ScmModel& model, const ScmOptions& options) {
  if (options.factual == options.counterfactual) throw CompileError("world names must differ");
  std::vector<Coordinate> coords;
  for (const auto* world : {&options.factual, &options.counterfactual}) {
    for (const auto& v : model.endogenous) coords.push_back({*world, v.name, v.labels});
  }
  return make_schema(std::move(coords), {options.factual, options.counterfactual});
}

std::size_t encode_pair(const SpaceSchema& schema, const std::vector<std::size_t>& f,
                        const std::vector<std::size_t>& cf) {
  std::vector<std::size_t> labels(f);
  labels.insert(labels.end(), cf.begin(), cf.end());
  return schema.encode(labels);
}

}  // namespace

std::vector<std::size_t> scm_order(const ScmModel& model) { return prepare(model).order; }

std::vector<std::size_t> solve_scm(const ScmModel& model, const std::vector<std::size_t>& order,
                                   std::size_t noise_index,
                                   const std::vector<std::optional<std::size_t>>& intervened) {
  auto prep = prepare(model);
  prep.order = order;
  return solve(prep, decode_noise(prep, noise_index), intervened);
}

CfSpace compile_scm(const ScmModel& input, const ScmOptions& options) {
  const auto model = canonical(input);
  const auto prep = prepare(model);
  const auto schema = two_world_schema(model, options);
  const std::size_t n = model.endogenous.size();
  const std::size_t t = 2 * n;

  std::vector<std::vector<std::size_t>> noise_values;
  for (std::size_t u = 0; u < model.noise.size(); ++u) noise_values.push_back(decode_noise(prep, u));

  const std::vector<std::optional<std::size_t>> none(n);
  std::vector<Rational> weights(schema->outcome_count(), 0);
  for (std::size_t u = 0; u < model.noise.size(); ++u) {
    if (model.noise[u] == 0) continue;
    auto v = solve(prep, noise_values[u], none);
    weights[encode_pair(*schema, v, v)] += model.noise[u];
  }
  Measure p(schema, std::move(weights));

  std::vector<CoordSet> keys;
  if (options.kernels) {
    keys = *options.kernels;
    for (auto s : keys) {
      if (!s.subset_of(schema->all())) throw CompileError("requested kernel outside the schema");
    }
  } else {
    if (t >= 63 || (std::size_t{1} << t) > kFullMechanismLimit) {
      throw CompileError("full mechanism has 2^" + std::to_string(t) + " kernels; list the kernels to emit");
    }
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << t); ++bits) keys.push_back(CoordSet::from_bits(bits));
  }

  Mechanism mech;
  for (auto s : keys) {
    Kernel k(schema, s);
    for (std::size_t e = 0; e < k.entry_count(); ++e) {
      auto partial = schema->decode_partial(s, e);
      std::vector<std::optional<std::size_t>> fx(n), cfx(n);
      std::size_t idx = 0;
      for (auto pos : s.members()) {
        auto value = partial.values[idx++];
        if (pos < n) {
          fx[pos] = value;
        } else {
          cfx[pos - n] = value;
        }
      }
      std::vector<Rational> w(schema->outcome_count(), 0);
      for (std::size_t u = 0; u < model.noise.size(); ++u) {
        if (model.noise[u] == 0) continue;
        w[encode_pair(*schema, solve(prep, noise_values[u], fx), solve(prep, noise_values[u], cfx))] +=
            model.noise[u];
      }
      k.set(e, Measure(schema, std::move(w)));
    }
    mech.add(std::move(k));
  }
  return CfSpace(std::move(p), std::move(mech));
}

CfSpace compile_backtracking(const ScmModel& input, const ScmModel& input_star,
                             const std::vector<Rational>& raw_coupling, const ScmOptions& options) {
  const auto model = canonical(input);
  const auto model_star = canonical(input_star);
  const auto coupling = canonical(raw_coupling);
  const auto prep = prepare(model);
  const auto prep_star = prepare(model_star);
  auto same_vars = [](const std::vector<Variable>& a, const std::vector<Variable>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const Variable& x, const Variable& y) { return x.name == y.name && x.labels == y.labels; });
  };
  if (!same_vars(model.endogenous, model_star.endogenous) || !same_vars(model.exogenous, model_star.exogenous)) {
    throw CompileError("backtracking models must declare the same variables");
  }
  const std::size_t nu = model.noise.size();
  if (coupling.size() != nu * nu) {
    throw CompileError("coupling has " + std::to_string(coupling.size()) + " weights, expected " +
                       std::to_string(nu * nu));
  }
  for (const auto& w : coupling) {
    if (w < 0) throw CompileError("negative coupling weight");
  }
  const auto schema = two_world_schema(model, options);
  const std::vector<std::optional<std::size_t>> none(model.endogenous.size());
  std::vector<std::vector<std::size_t>> v(nu), v_star(nu);
  for (std::size_t u = 0; u < nu; ++u) {
    v[u] = solve(prep, decode_noise(prep, u), none);
    v_star[u] = solve(prep_star, decode_noise(prep_star, u), none);
  }
  std::vector<Rational> weights(schema->outcome_count(), 0);
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t us = 0; us < nu; ++us) {
      const auto& w = coupling[u * nu + us];
      if (w != 0) weights[encode_pair(*schema, v[u], v_star[us])] += w;
    }
  }
  return CfSpace(Measure(schema, std::move(weights)));
}

PoCompilation compile_po(const PoModel& input) {
  PoModel model = input;
  model.prior = canonical(input.prior);
  using Key = std::vector<std::pair<std::string, std::string>>;
  const std::size_t units = model.units.size();
  if (units == 0) throw CompileError("no units");
  if (std::set<std::string>(model.units.begin(), model.units.end()).size() != units) {
    throw CompileError("duplicate unit");
  }
  if (model.prior.size() != units) throw CompileError("prior must give one weight per unit");
  std::map<std::string, std::size_t> endo;
  for (std::size_t i = 0; i < model.endogenous.size(); ++i) {
    if (!endo.emplace(model.endogenous[i].name, i).second) {
      throw CompileError("duplicate variable " + model.endogenous[i].name);
    }
  }
  if (model.observed.size() != model.endogenous.size()) {
    throw CompileError("every endogenous variable needs an observed function");
  }
  for (std::size_t i = 0; i < model.observed.size(); ++i) {
    if (model.observed[i].size() != units) throw CompileError(model.endogenous[i].name + ": observed function incomplete");
    for (auto x : model.observed[i]) {
      if (x >= model.endogenous[i].labels.size()) throw CompileError(model.endogenous[i].name + ": label out of range");
    }
  }

  // Worlds in order of first appearance of their (normalised) assignment.
  std::vector<Key> keys;
  std::vector<Key> shown;
  std::map<std::pair<Key, std::size_t>, const PotentialOutcome*> table;
  for (const auto& po : model.potentials) {
    auto it = endo.find(po.variable);
    if (it == endo.end()) throw CompileError("potential outcome of unknown variable " + po.variable);
    const auto& var = model.endogenous[it->second];
    if (po.values.size() != units) throw CompileError(po.variable + ": potential outcome function incomplete");
    for (auto x : po.values) {
      if (x >= var.labels.size()) throw CompileError(po.variable + ": label out of range");
    }
    Key key = po.assignment;
    for (const auto& [name, label] : key) {
      auto v = endo.find(name);
      if (v == endo.end()) throw CompileError("treatment on unknown variable " + name);
      const auto& labels = model.endogenous[v->second].labels;
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
        throw CompileError("unknown label " + label + " for " + name);
      }
    }
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end(), [](const auto& a, const auto& b) { return a.first == b.first; }) !=
        key.end()) {
      throw CompileError("treatment assigns a variable twice");
    }
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      keys.push_back(key);
      shown.push_back(po.assignment);
    }
    if (!table.emplace(std::make_pair(key, it->second), &po).second) {
      throw CompileError("duplicate potential outcome for " + po.variable);
    }
  }

  std::vector<Coordinate> coords;
  std::vector<std::string> worlds;
  // (unit -> label) source for each coordinate.
  std::vector<const std::vector<std::size_t>*> source;
  for (std::size_t j = 0; j < keys.size(); ++j) {
    worlds.push_back("W" + std::to_string(j + 1));
    for (std::size_t i = 0; i < model.endogenous.size(); ++i) {
      auto it = table.find({keys[j], i});
      if (it == table.end()) continue;
      coords.push_back({worlds.back(), model.endogenous[i].name, model.endogenous[i].labels});
      source.push_back(&it->second->values);
    }
  }
  worlds.push_back("OBS");
  for (std::size_t i = 0; i < model.endogenous.size(); ++i) {
    coords.push_back({"OBS", model.endogenous[i].name, model.endogenous[i].labels});
    source.push_back(&model.observed[i]);
  }
  auto schema = make_schema(std::move(coords), std::move(worlds));
  std::vector<Rational> weights(schema->outcome_count(), 0);
  std::vector<std::size_t> labels(source.size());
  for (std::size_t u = 0; u < units; ++u) {
    if (model.prior[u] < 0) throw CompileError("negative prior weight");
    for (std::size_t c = 0; c < source.size(); ++c) labels[c] = (*source[c])[u];
    weights[schema->encode(labels)] += model.prior[u];
  }
  return PoCompilation{CfSpace(Measure(schema, std::move(weights))), std::move(shown)};
}

}  // namespace cfs
