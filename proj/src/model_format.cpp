#include "cfs/model_format.hpp"

#include <map>
#include <set>
#include <variant>

#include "cfs/error.hpp"
#include "tables.hpp"

namespace cfs {

using detail::Token;
using detail::TokenStream;

namespace {

// NAME { label ... } repeated, inside braces.
std::vector<std::pair<Token, Variable>> parse_variables(TokenStream& ts) {
  std::vector<std::pair<Token, Variable>> vars;
  ts.expect_punct("{");
  while (!ts.accept_punct("}")) {
    Token at = ts.expect_identifier("a variable name");
    Variable v{at.text, {}};
    ts.expect_punct("{");
    while (!ts.accept_punct("}")) {
      v.labels.push_back(ts.expect_label().text);
      ts.skip_separators();
    }
    if (v.labels.empty()) TokenStream::fail_at(at, "variable " + v.name + " has no labels");
    vars.emplace_back(at, std::move(v));
    ts.skip_separators();
  }
  return vars;
}

SchemaPtr schema_over(const Token& at, const std::vector<Variable>& vars, const std::string& world,
                      const std::string& suffix = "") {
  std::vector<Coordinate> coords;
  for (const auto& v : vars) coords.push_back({world, v.name + suffix, v.labels});
  try {
    return make_schema(std::move(coords));
  } catch (const Error& e) {
    TokenStream::fail_at(at, e.what());
  }
}

struct RawEquation {
  Token at;
  std::vector<std::pair<Token, std::string>> parents;
  std::vector<std::pair<Token, std::string>> noise;
  std::vector<std::pair<detail::Tuple, Token>> rows;
};

std::vector<std::pair<detail::Tuple, Token>> parse_rows(TokenStream& ts) {
  std::vector<std::pair<detail::Tuple, Token>> rows;
  ts.expect_punct("{");
  while (!ts.accept_punct("}")) {
    auto tuple = detail::parse_tuple(ts);
    ts.expect_punct("->");
    rows.emplace_back(std::move(tuple), ts.expect_label());
    ts.skip_separators();
  }
  return rows;
}

const Variable* find_var(const std::vector<Variable>& vars, const std::string& name) {
  for (const auto& v : vars) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::size_t label_of(const Variable& v, const Token& at) {
  for (std::size_t i = 0; i < v.labels.size(); ++i) {
    if (v.labels[i] == at.text) return i;
  }
  TokenStream::fail_at(at, "unknown label " + at.text + " for " + v.name);
}

}  // namespace

ScmOptions ScmDocument::options() const {
  ScmOptions o;
  o.kernels = kernels;
  return o;
}

ScmDocument parse_scm(std::string_view text) {
  TokenStream ts(text);
  ScmDocument doc;
  ts.expect_word("model");
  doc.name = ts.expect_identifier("a model name").text;

  std::optional<Token> exo_at, endo_at;
  std::optional<std::pair<Token, std::optional<detail::WeightTable>>> noise;
  std::optional<std::pair<Token, std::variant<std::string, detail::WeightTable>>> coupling;
  std::optional<std::pair<Token, std::vector<std::vector<std::pair<Token, std::string>>>>> kernels;
  std::vector<std::pair<Token, RawEquation>> equations;
  while (!ts.at_end()) {
    Token at = ts.peek();
    if (ts.accept_word("exogenous")) {
      if (exo_at) TokenStream::fail_at(at, "duplicate exogenous block");
      exo_at = at;
      for (auto& [t, v] : parse_variables(ts)) doc.model.exogenous.push_back(std::move(v));
    } else if (ts.accept_word("endogenous")) {
      if (endo_at) TokenStream::fail_at(at, "duplicate endogenous block");
      endo_at = at;
      for (auto& [t, v] : parse_variables(ts)) doc.model.endogenous.push_back(std::move(v));
    } else if (ts.accept_word("noise")) {
      if (noise) TokenStream::fail_at(at, "duplicate noise block");
      if (ts.accept_word("uniform")) {
        noise.emplace(at, std::nullopt);
      } else {
        noise.emplace(at, detail::parse_weight_table(ts));
      }
    } else if (ts.accept_word("equation")) {
      RawEquation eq;
      eq.at = ts.expect_identifier("a variable name");
      if (ts.accept_word("parents")) eq.parents = detail::parse_key_list(ts);
      if (ts.accept_word("noise")) eq.noise = detail::parse_key_list(ts);
      eq.rows = parse_rows(ts);
      equations.emplace_back(at, std::move(eq));
    } else if (ts.accept_word("coupling")) {
      if (coupling) TokenStream::fail_at(at, "duplicate coupling block");
      if (ts.is_word("diagonal") || ts.is_word("product")) {
        coupling.emplace(at, ts.next().text);
      } else {
        coupling.emplace(at, detail::parse_weight_table(ts));
      }
    } else if (ts.accept_word("kernels")) {
      if (kernels) TokenStream::fail_at(at, "duplicate kernels block");
      std::vector<std::vector<std::pair<Token, std::string>>> sets;
      ts.expect_punct("{");
      while (!ts.accept_punct("}")) {
        sets.push_back(detail::parse_key_list(ts));
        ts.skip_separators();
      }
      kernels.emplace(at, std::move(sets));
    } else {
      ts.fail("unexpected '" + at.text + "' in model");
    }
    ts.skip_separators();
  }
  if (!exo_at) ts.fail("missing exogenous block");
  if (!endo_at) ts.fail("missing endogenous block");
  if (!noise) ts.fail("missing noise block");

  const auto& exo = doc.model.exogenous;
  const auto& endo = doc.model.endogenous;
  auto exo_schema = schema_over(*exo_at, exo, "U");
  if (noise->second) {
    doc.model.noise = detail::resolve_weights(*exo_schema, exo_schema->all(), *noise->second);
  } else {
    doc.model.noise.assign(exo_schema->outcome_count(), Rational(1, exo_schema->outcome_count()));
  }

  for (auto& [at, raw] : equations) {
    const Variable* target = find_var(endo, raw.at.text);
    if (!target) TokenStream::fail_at(raw.at, "equation for undeclared variable " + raw.at.text);
    Equation eq{target->name, {}, {}, {}};
    std::vector<Variable> inputs;
    for (const auto& [t, name] : raw.parents) {
      const Variable* v = find_var(endo, name);
      if (!v) TokenStream::fail_at(t, "parent " + name + " is not endogenous");
      eq.parents.push_back(name);
      inputs.push_back(*v);
    }
    for (const auto& [t, name] : raw.noise) {
      const Variable* v = find_var(exo, name);
      if (!v) TokenStream::fail_at(t, "noise " + name + " is not exogenous");
      eq.noise.push_back(name);
      inputs.push_back(*v);
    }
    auto input_schema = schema_over(raw.at, inputs, "E");
    std::vector<std::optional<std::size_t>> table(input_schema->outcome_count());
    for (const auto& [tuple, value] : raw.rows) {
      auto row = detail::resolve_partial(*input_schema, tuple, input_schema->all());
      if (table[row]) TokenStream::fail_at(tuple.at, "row listed twice");
      table[row] = label_of(*target, value);
    }
    for (std::size_t r = 0; r < table.size(); ++r) {
      if (!table[r]) {
        TokenStream::fail_at(raw.at, "equation for " + eq.target + " has no row for " +
                                         input_schema->describe_outcome(r));
      }
      eq.table.push_back(*table[r]);
    }
    doc.model.equations.push_back(std::move(eq));
  }

  if (coupling) {
    const std::size_t nu = doc.model.noise.size();
    std::vector<Rational> weights(nu * nu, 0);
    if (auto* mode = std::get_if<std::string>(&coupling->second)) {
      for (std::size_t u = 0; u < nu; ++u) {
        if (*mode == "diagonal") {
          weights[u * nu + u] = doc.model.noise[u];
        } else {
          for (std::size_t v = 0; v < nu; ++v) weights[u * nu + v] = doc.model.noise[u] * doc.model.noise[v];
        }
      }
    } else {
      std::vector<Coordinate> coords;
      for (const auto& v : exo) coords.push_back({"U", v.name, v.labels});
      for (const auto& v : exo) coords.push_back({"Ustar", v.name + "*", v.labels});
      SpaceSchema pair_schema(std::move(coords));
      weights = detail::resolve_weights(pair_schema, pair_schema.all(),
                                        std::get<detail::WeightTable>(coupling->second));
    }
    doc.coupling = std::move(weights);
  }

  if (kernels) {
    std::vector<Coordinate> coords;
    for (const auto* w : {"F", "CF"}) {
      for (const auto& v : endo) coords.push_back({w, v.name, v.labels});
    }
    SpaceSchema compiled(std::move(coords));
    std::vector<CoordSet> keys;
    for (const auto& set : kernels->second) keys.push_back(detail::resolve_coordset(compiled, set));
    doc.kernels = std::move(keys);
  }
  return doc;
}

PoDocument parse_po(std::string_view text) {
  TokenStream ts(text);
  PoDocument doc;
  ts.expect_word("model");
  doc.name = ts.expect_identifier("a model name").text;

  std::optional<Token> units_at, endo_at;
  std::optional<std::pair<Token, std::vector<std::pair<Token, Rational>>>> prior;
  std::optional<Rational> prior_default;
  struct RawFunction {
    Token at;
    Token variable;
    std::optional<detail::Tuple> assignment;
    std::vector<std::pair<Token, Token>> rows;
  };
  std::vector<RawFunction> functions;

  auto parse_unit_rows = [&ts]() {
    std::vector<std::pair<Token, Token>> rows;
    ts.expect_punct("{");
    while (!ts.accept_punct("}")) {
      Token unit = ts.expect_identifier("a unit");
      ts.expect_punct("->");
      rows.emplace_back(unit, ts.expect_label());
      ts.skip_separators();
    }
    return rows;
  };

  while (!ts.at_end()) {
    Token at = ts.peek();
    if (ts.accept_word("units")) {
      if (units_at) TokenStream::fail_at(at, "duplicate units block");
      units_at = at;
      ts.expect_punct("{");
      while (!ts.accept_punct("}")) {
        doc.model.units.push_back(ts.expect_identifier("a unit").text);
        ts.skip_separators();
      }
    } else if (ts.accept_word("prior")) {
      if (prior) TokenStream::fail_at(at, "duplicate prior block");
      std::vector<std::pair<Token, Rational>> rows;
      ts.expect_punct("{");
      while (!ts.accept_punct("}")) {
        if (ts.accept_word("default")) {
          ts.expect_punct("=");
          prior_default = ts.expect_rational();
        } else {
          Token unit = ts.expect_identifier("a unit");
          ts.expect_punct("=");
          rows.emplace_back(unit, ts.expect_rational());
        }
        ts.skip_separators();
      }
      prior.emplace(at, std::move(rows));
    } else if (ts.accept_word("endogenous")) {
      if (endo_at) TokenStream::fail_at(at, "duplicate endogenous block");
      endo_at = at;
      for (auto& [t, v] : parse_variables(ts)) doc.model.endogenous.push_back(std::move(v));
    } else if (ts.accept_word("observed")) {
      RawFunction f{at, ts.expect_identifier("a variable name"), std::nullopt, {}};
      f.rows = parse_unit_rows();
      functions.push_back(std::move(f));
    } else if (ts.accept_word("potential")) {
      RawFunction f{at, ts.expect_identifier("a variable name"), std::nullopt, {}};
      ts.expect_word("do");
      f.assignment = detail::parse_tuple(ts);
      f.rows = parse_unit_rows();
      functions.push_back(std::move(f));
    } else {
      ts.fail("unexpected '" + at.text + "' in model");
    }
    ts.skip_separators();
  }
  if (!units_at) ts.fail("missing units block");
  if (!endo_at) ts.fail("missing endogenous block");
  if (!prior) ts.fail("missing prior block");

  const auto& units = doc.model.units;
  std::map<std::string, std::size_t> unit_index;
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (!unit_index.emplace(units[u], u).second) TokenStream::fail_at(*units_at, "duplicate unit " + units[u]);
  }
  auto unit_of = [&](const Token& t) {
    auto it = unit_index.find(t.text);
    if (it == unit_index.end()) TokenStream::fail_at(t, "unknown unit " + t.text);
    return it->second;
  };

  std::vector<std::optional<Rational>> prior_cells(units.size());
  for (const auto& [t, w] : prior->second) {
    auto u = unit_of(t);
    if (prior_cells[u]) TokenStream::fail_at(t, "unit " + t.text + " listed twice");
    prior_cells[u] = w;
  }
  Rational total = 0;
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (!prior_cells[u] && !prior_default) TokenStream::fail_at(prior->first, "no prior weight for unit " + units[u]);
    doc.model.prior.push_back(prior_cells[u] ? *prior_cells[u] : *prior_default);
    total += doc.model.prior.back();
  }
  if (total != 1) {
    TokenStream::fail_at(prior->first, "weights sum to " + to_string(total) + ", shortfall " + to_string(Rational(1) - total));
  }

  const auto& endo = doc.model.endogenous;
  doc.model.observed.resize(endo.size());
  for (const auto& f : functions) {
    std::size_t var = endo.size();
    for (std::size_t i = 0; i < endo.size(); ++i) {
      if (endo[i].name == f.variable.text) var = i;
    }
    if (var == endo.size()) TokenStream::fail_at(f.variable, "undeclared variable " + f.variable.text);
    std::vector<std::optional<std::size_t>> cells(units.size());
    for (const auto& [unit, label] : f.rows) {
      auto u = unit_of(unit);
      if (cells[u]) TokenStream::fail_at(unit, "unit " + unit.text + " listed twice");
      cells[u] = label_of(endo[var], label);
    }
    std::vector<std::size_t> values;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (!cells[u]) TokenStream::fail_at(f.at, f.variable.text + " has no value for unit " + units[u]);
      values.push_back(*cells[u]);
    }
    if (!f.assignment) {
      if (!doc.model.observed[var].empty()) TokenStream::fail_at(f.at, "duplicate observed function for " + f.variable.text);
      doc.model.observed[var] = std::move(values);
      continue;
    }
    PotentialOutcome po{endo[var].name, {}, std::move(values)};
    for (const auto& item : f.assignment->items) {
      const Variable* v = find_var(endo, item.key);
      if (!v) TokenStream::fail_at(item.at, "treatment on undeclared variable " + item.key);
      label_of(*v, [&] {
        Token t = item.at;
        t.text = item.label;
        return t;
      }());
      po.assignment.emplace_back(item.key, item.label);
    }
    doc.model.potentials.push_back(std::move(po));
  }
  for (std::size_t i = 0; i < endo.size(); ++i) {
    if (doc.model.observed[i].empty()) TokenStream::fail_at(*endo_at, "no observed function for " + endo[i].name);
  }
  return doc;
}

}  // namespace cfs
