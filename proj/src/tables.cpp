#include "tables.hpp"

#include "cfs/error.hpp"

namespace cfs::detail {

std::pair<Token, std::string> parse_key(TokenStream& ts) {
  Token first = ts.expect_identifier("a coordinate");
  std::string key = first.text;
  if (ts.accept_punct(".")) key += "." + ts.expect_identifier("a component name").text;
  return {first, key};
}

Tuple parse_tuple(TokenStream& ts) {
  Tuple tuple;
  tuple.at = ts.peek();
  ts.expect_punct("(");
  while (!ts.is_punct(")")) {
    auto [at, key] = parse_key(ts);
    ts.expect_punct("=");
    tuple.items.push_back({at, key, ts.expect_label().text});
    if (!ts.accept_punct(",")) break;
  }
  ts.expect_punct(")");
  return tuple;
}

WeightTable parse_weight_table(TokenStream& ts) {
  WeightTable table;
  table.at = ts.peek();
  ts.expect_punct("{");
  while (!ts.accept_punct("}")) {
    if (ts.is_word("default")) {
      Token at = ts.next();
      if (table.fallback) TokenStream::fail_at(at, "duplicate default");
      ts.expect_punct("=");
      table.fallback = ts.expect_rational();
    } else {
      Tuple tuple = parse_tuple(ts);
      ts.expect_punct("=");
      table.rows.push_back({std::move(tuple), ts.expect_rational()});
    }
    ts.skip_separators();
  }
  return table;
}

std::vector<std::pair<Token, std::string>> parse_key_list(TokenStream& ts) {
  std::vector<std::pair<Token, std::string>> keys;
  ts.expect_punct("{");
  while (!ts.is_punct("}")) {
    keys.push_back(parse_key(ts));
    if (!ts.accept_punct(",")) break;
  }
  ts.expect_punct("}");
  return keys;
}

std::size_t resolve_coord(const SpaceSchema& schema, const Token& at, const std::string& key) {
  auto dot = key.find('.');
  if (dot != std::string::npos) {
    if (auto p = schema.find(key.substr(0, dot), key.substr(dot + 1))) return *p;
    TokenStream::fail_at(at, "unknown coordinate " + key);
  }
  std::optional<std::size_t> found;
  for (std::size_t p = 0; p < schema.coord_count(); ++p) {
    if (schema.coord(p).name != key) continue;
    if (found) TokenStream::fail_at(at, "ambiguous coordinate " + key + "; qualify it with a world");
    found = p;
  }
  if (!found) TokenStream::fail_at(at, "unknown coordinate " + key);
  return *found;
}

CoordSet resolve_coordset(const SpaceSchema& schema, const std::vector<std::pair<Token, std::string>>& keys) {
  CoordSet out;
  for (const auto& [at, key] : keys) {
    auto p = resolve_coord(schema, at, key);
    if (out.contains(p)) TokenStream::fail_at(at, "coordinate " + key + " listed twice");
    out = out.with(p);
  }
  return out;
}

std::size_t resolve_partial(const SpaceSchema& schema, const Tuple& tuple, CoordSet on) {
  std::vector<std::optional<std::size_t>> values(schema.coord_count());
  for (const auto& item : tuple.items) {
    auto p = resolve_coord(schema, item.at, item.key);
    if (!on.contains(p)) TokenStream::fail_at(item.at, "coordinate " + item.key + " is not in " + schema.describe(on));
    if (values[p]) TokenStream::fail_at(item.at, "coordinate " + item.key + " assigned twice");
    auto label = schema.coord(p).label_index(item.label);
    if (!label) TokenStream::fail_at(item.at, "unknown label " + item.label + " for " + schema.coord(p).qualified());
    values[p] = *label;
  }
  PartialOutcome partial{on, {}};
  for (auto p : on.members()) {
    if (!values[p]) TokenStream::fail_at(tuple.at, "missing coordinate " + schema.coord(p).qualified());
    partial.values.push_back(*values[p]);
  }
  return schema.encode_partial(partial);
}

std::vector<Rational> resolve_weights(const SpaceSchema& schema, CoordSet on, const WeightTable& table) {
  const std::size_t n = schema.projection_count(on);
  std::vector<std::optional<Rational>> cells(n);
  for (const auto& row : table.rows) {
    auto index = resolve_partial(schema, row.tuple, on);
    if (cells[index]) TokenStream::fail_at(row.tuple.at, "outcome listed twice");
    cells[index] = row.weight;
  }
  std::vector<Rational> weights(n);
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cells[i]) {
      weights[i] = *cells[i];
    } else if (table.fallback) {
      weights[i] = *table.fallback;
    } else {
      TokenStream::fail_at(table.at, "table lists " + std::to_string(table.rows.size()) + " of " + std::to_string(n) +
                                         " outcomes and has no default; first missing " +
                                         schema.describe_partial(on, i));
    }
    total += weights[i];
  }
  if (total != 1) {
    TokenStream::fail_at(table.at, "weights sum to " + to_string(total) + ", shortfall " + to_string(Rational(1) - total));
  }
  return weights;
}

Measure resolve_measure(const SchemaPtr& schema, const WeightTable& table) {
  return Measure(schema, resolve_weights(*schema, schema->all(), table));
}

}  // namespace cfs::detail
