#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfs/rational.hpp"
#include "cfs/space.hpp"

namespace cfs {

/// A probability measure on a finite schema: one exact weight per outcome.
/// Construction rejects negative weights and totals other than exactly 1.
class Measure {
 public:
  Measure(SchemaPtr schema, std::vector<Rational> weights);

  static Measure uniform(SchemaPtr schema);
  static Measure point(SchemaPtr schema, std::size_t outcome);

  const SchemaPtr& schema_ptr() const { return schema_; }
  const SpaceSchema& schema() const { return *schema_; }
  const Rational& weight(std::size_t outcome) const { return weights_[outcome]; }
  std::span<const Rational> weights() const { return weights_; }
  Event support() const;

  bool operator==(const Measure& other) const;

 private:
  SchemaPtr schema_;
  std::vector<Rational> weights_;
};

Rational prob(const Measure& p, const Event& a);

/// delta_omega on the full space.
Measure dirac(const SchemaPtr& schema, std::size_t outcome);
/// delta on Omega_S at the partial outcome `index`; the result lives on
/// schema.restrict(S), the form interventions expect for Q.
Measure dirac(const SpaceSchema& schema, CoordSet s, std::size_t index);

/// Pushforward of P under project(., S), as a measure on schema.restrict(S).
Measure marginal(const Measure& p, CoordSet s);

/// P_G(A) = P(G n A) / P(G). Throws ConditioningUndefined when P(G) = 0.
Measure condition_event(const Measure& p, const Event& g);

/// A version of P_G(omega, .) for the sigma-algebra generated by a partition.
/// Null atoms map to P itself and are flagged.
struct AtomConditional {
  Partition sigma;
  std::vector<Measure> table;
  std::vector<bool> null_atom;

  const Measure& at_outcome(std::size_t outcome) const { return table[sigma.block_of(outcome)]; }
};

AtomConditional condition_sigma(const Measure& p, const Partition& sigma);
AtomConditional condition_sigma(const Measure& p, CoordSet s);

bool independent(const Measure& p, const Event& a, const Event& b);
/// Throws ConditioningUndefined when P(G) = 0.
bool independent_given(const Measure& p, const Event& a, const Event& b, const Event& g);
/// Product identity on every positive atom of the conditioning partition.
bool independent_given(const Measure& p, const Event& a, const Event& b, const Partition& given);

/// sigma(S1) and sigma(S2) independent; checked on generating atom pairs.
bool independent_sigmas(const Measure& p, const Partition& s1, const Partition& s2);
bool independent_sigmas(const Measure& p, CoordSet s1, CoordSet s2);
bool independent_sigmas_given(const Measure& p, const Partition& s1, const Partition& s2,
                              const Event& g);
bool independent_sigmas_given(const Measure& p, const Partition& s1, const Partition& s2,
                              const Partition& given);

/// P(A symmetric-difference B) = 0.
bool as_equal(const Measure& p, const Event& a, const Event& b);
bool as_equal_given(const Measure& p, const Event& g, const Event& a, const Event& b);

/// Every event of one sigma-algebra is a.s. equal to one of the other, and
/// vice versa. Decided by comparing the two partitions on the support of P.
bool synchronized(const Measure& p, const Partition& s1, const Partition& s2);
bool synchronized(const Measure& p, CoordSet s1, CoordSet s2);

}  // namespace cfs
