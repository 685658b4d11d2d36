#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfs/mechanism.hpp"

namespace cfs {

struct EventExpr {
  enum class Kind { All, Atom, Name, Not, And, Or };
  Kind kind = Kind::All;
  std::string key;    // coordinate for Atom, bound name for Name
  std::string label;  // Atom only
  std::vector<EventExpr> operands;
};

std::string render(const EventExpr& e);

/// An event expression or a coordinate set `{W.a, W.b}`.
struct Operand {
  bool coords = false;
  EventExpr event;
  std::vector<std::string> keys;
};

std::string render(const Operand& o);

struct Distribution {
  enum class Kind { Point, Uniform, Table };
  Kind kind = Kind::Point;
  /// Point assignment, or table rows with their weights.
  std::vector<std::pair<std::vector<std::pair<std::string, std::string>>, Rational>> rows;
  std::optional<Rational> fallback;
};

struct Statement {
  enum class Kind { Let, Condition, Intervene, Prob, Effect, Indep, Sync, Equal, Source, Check };
  Kind kind = Kind::Check;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string name;
  std::vector<Operand> operands;
  std::optional<Operand> given;
  Distribution distribution;
};

struct QueryScript {
  std::vector<Statement> statements;
};

/// Throws ParseError, including for names used before their LET.
QueryScript parse_query(std::string_view text);

/// Runs the script statement by statement, writing one transcript line per
/// query to `out` and notes (such as underived kernels) to `diagnostics`.
/// Returns 1 when a CHECK found violations, 0 otherwise. ConditioningUndefined
/// and MissingKernel propagate; unknown coordinates raise ParseError.
int run(const CfSpace& space, const QueryScript& script, std::ostream& out, std::ostream* diagnostics = nullptr);

/// run() into a string.
std::string transcript(const CfSpace& space, const QueryScript& script, int* status = nullptr);

}  // namespace cfs
