#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfs/measure.hpp"
#include "lexer.hpp"

namespace cfs::detail {

struct TupleItem {
  Token at;
  std::string key;  // "W.name" or a bare name
  std::string label;
};

struct Tuple {
  Token at;
  std::vector<TupleItem> items;
};

struct WeightRow {
  Tuple tuple;
  Rational weight;
};

struct WeightTable {
  Token at;
  std::vector<WeightRow> rows;
  std::optional<Rational> fallback;
};

/// Word, or Word '.' Word.
std::pair<Token, std::string> parse_key(TokenStream& ts);
/// '(' [key '=' label {',' key '=' label}] ')'
Tuple parse_tuple(TokenStream& ts);
/// '{' {tuple '=' rational} ['default' '=' rational] '}'
WeightTable parse_weight_table(TokenStream& ts);
/// '{' [key {',' key}] '}'
std::vector<std::pair<Token, std::string>> parse_key_list(TokenStream& ts);

/// Qualified names are looked up directly; a bare name must be unique.
std::size_t resolve_coord(const SpaceSchema& schema, const Token& at, const std::string& key);
CoordSet resolve_coordset(const SpaceSchema& schema, const std::vector<std::pair<Token, std::string>>& keys);
/// Index in Omega_on; the tuple must name every coordinate of `on` once.
std::size_t resolve_partial(const SpaceSchema& schema, const Tuple& tuple, CoordSet on);
/// Exact weights over Omega_on with default fill and coverage/sum checks.
std::vector<Rational> resolve_weights(const SpaceSchema& schema, CoordSet on, const WeightTable& table);
Measure resolve_measure(const SchemaPtr& schema, const WeightTable& table);

}  // namespace cfs::detail
