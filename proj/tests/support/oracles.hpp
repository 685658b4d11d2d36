#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "generators.hpp"

namespace cfs::testing {

/// Brute-force versions of the fast paths, quantifying over events of spaces
/// with at most 16 outcomes. Events are bitmasks over outcomes. Probabilities
/// are kept exact as integer numerators over a common denominator.
inline constexpr std::size_t kOracleOutcomes = 16;

struct EventTable {
  std::vector<std::int64_t> num;  // indexed by event mask
  std::int64_t den = 1;
};
EventTable event_table(const Measure& m);

std::uint32_t mask_of(const Event& e);
/// Every event of H_S, as masks.
std::vector<std::uint32_t> sigma_events(const SpaceSchema& schema, CoordSet s);

/// Quantified checks run over every pair while the pair count stays within
/// `pairs`; larger cases draw `samples` random first events instead.
struct Budget {
  std::uint64_t pairs = std::uint64_t{1} << 22;
  /// (A, B) pairs per kernel entry.
  std::uint64_t kernel_pairs = std::uint64_t{1} << 20;
  std::uint64_t samples = 64;
};

struct OracleResult {
  bool value = true;
  bool exhaustive = true;
  std::uint64_t checks = 0;
};

/// For all A in sigma(S1) some B in sigma(S2) has P(A xor B) = 0, and back.
OracleResult oracle_synchronized(const Measure& p, CoordSet s1, CoordSet s2, Rng& rng, Budget budget = {});
/// P(A n B) = P(A) P(B) for all A in sigma(S1), B in sigma(S2).
OracleResult oracle_independent(const Measure& p, CoordSet s1, CoordSet s2, Rng& rng, Budget budget = {});
/// K_S(w, A n B) = 1_A(w) K_S(w, B) for all A in H_S and all events B.
OracleResult oracle_kernel_entry(const Kernel& k, std::size_t entry, Rng& rng, Budget budget = {});
/// K(A) = P(A) for every event A.
bool oracle_same_law(const Measure& k, const Measure& p);
/// P(F in A, CF in B) = P(F in B, CF in A) for all A, B over one world.
bool oracle_symmetric(const Measure& p, const WorldMirror& mirror);

}  // namespace cfs::testing
