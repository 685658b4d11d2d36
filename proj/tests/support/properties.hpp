#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace cfs::testing {

struct SuiteStats {
  std::size_t spaces = 0;
  std::size_t checks = 0;
  /// Implications whose premise held, in total and per property.
  std::size_t premises = 0;
  std::map<std::string, std::size_t> premises_by;
  /// Oracle comparisons decided by sampling instead of full enumeration.
  std::size_t sampled = 0;
  std::size_t failures = 0;
  std::vector<std::string> details;  // first few failures

  void fail(std::string what);
  void premise(const std::string& property);
  bool ok() const { return failures == 0; }
  std::string summary() const;
};

/// Random key of the mechanism; total kernels only when asked.
CoordSet random_key(const CfSpace& space, Rng& rng, bool total_only);
/// Random Q on Omega_U supported on the present entries of K_U.
Measure random_q_for(const CfSpace& space, CoordSet u, Rng& rng);

/// Interventions on random spaces yield spaces with empty axiom and
/// cross-world reports, also when composed.
SuiteStats closure_suite(std::uint64_t seed, std::size_t spaces);
/// verify_fundamental on random spaces and total K_U.
SuiteStats fundamental_suite(std::uint64_t seed, std::size_t spaces);
/// Independence (two forms) and a.s. equality preserved by interventions,
/// and no cross-world conditional effect.
SuiteStats preservation_suite(std::uint64_t seed, std::size_t spaces);
/// Compiled SCMs are synchronised and valid; diagonal backtracking equals
/// standard compilation; PO observed marginals equal the pushforward.
SuiteStats compiler_suite(std::uint64_t seed, std::size_t models);
/// Fast paths against brute force on every schema shape with at most 16
/// outcomes: kernel support check, atom-pair independence, partition
/// synchronisation and the measure symmetry check.
SuiteStats oracle_suite(std::uint64_t seed, std::size_t measures_per_shape, Budget budget = {});

/// The two-variable chain X = U1, Y = X xor U2 and its hand-enumerated space.
ScmModel chain_model();
bool chain_matches_hand_enumeration(std::string* why = nullptr);

}  // namespace cfs::testing
