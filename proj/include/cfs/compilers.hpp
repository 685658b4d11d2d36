#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfs/mechanism.hpp"

namespace cfs {

struct Variable {
  std::string name;
  std::vector<std::string> labels;
};

/// V = f(parents, noise) as a finite table. Rows are indexed in mixed radix
/// over the parents then the noise variables, first one most significant;
/// each row holds a label index of the target.
struct Equation {
  std::string target;
  std::vector<std::string> parents;
  std::vector<std::string> noise;
  std::vector<std::size_t> table;
};

struct ScmModel {
  std::vector<Variable> exogenous;
  /// Joint law of the exogenous variables, mixed radix as above.
  std::vector<Rational> noise;
  std::vector<Variable> endogenous;
  std::vector<Equation> equations;
};

struct ScmOptions {
  std::string factual = "F";
  std::string counterfactual = "CF";
  /// Kernel keys to emit. When absent the full mechanism is emitted, which is
  /// only allowed while 2^|T| <= kFullMechanismLimit.
  std::optional<std::vector<CoordSet>> kernels;
};

inline constexpr std::size_t kFullMechanismLimit = 4096;

/// Topological order of the endogenous variables. Throws CompileError on
/// malformed models and on cycles.
std::vector<std::size_t> scm_order(const ScmModel& model);

/// Endogenous labels for one noise value under do(intervened), where
/// intervened[i] is either a label index or nullopt.
std::vector<std::size_t> solve_scm(const ScmModel& model, const std::vector<std::size_t>& order,
                                   std::size_t noise_index,
                                   const std::vector<std::optional<std::size_t>>& intervened);

/// Two mirrored worlds sharing the noise. Coordinates are F.V_1..F.V_n then
/// CF.V_1..CF.V_n.
CfSpace compile_scm(const ScmModel& model, const ScmOptions& options = {});

/// Two worlds with noise pairs drawn from `coupling`, a joint law over
/// (u, u*) indexed u * |Omega_U| + u*. No kernels beyond K_empty.
CfSpace compile_backtracking(const ScmModel& model, const ScmModel& model_star,
                             const std::vector<Rational>& coupling, const ScmOptions& options = {});

struct PotentialOutcome {
  std::string variable;
  /// The treatment assignment x as (variable, label) pairs.
  std::vector<std::pair<std::string, std::string>> assignment;
  /// Label index per unit.
  std::vector<std::size_t> values;
};

struct PoModel {
  std::vector<std::string> units;
  std::vector<Rational> prior;
  std::vector<Variable> endogenous;
  /// observed[i][u]: label index of V_i for unit u.
  std::vector<std::vector<std::size_t>> observed;
  std::vector<PotentialOutcome> potentials;
};

struct PoCompilation {
  CfSpace space;
  /// Treatment assignment of each world W1..WN; the last world OBS carries
  /// the observed variables.
  std::vector<std::vector<std::pair<std::string, std::string>>> assignments;
};

/// (N+1)-way space, N = number of distinct assignments. No mechanism.
PoCompilation compile_po(const PoModel& model);

}  // namespace cfs
