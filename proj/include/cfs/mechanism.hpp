#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfs/measure.hpp"
#include "cfs/rational.hpp"
#include "cfs/space.hpp"

namespace cfs {

/// A causal kernel K_S: for each partial outcome omega_S (indexed in
/// Omega_S) a measure on the full space. Entries may be absent; worked
/// examples often specify only some rows of a kernel.
class Kernel {
 public:
  Kernel(SchemaPtr schema, CoordSet on);

  const SchemaPtr& schema_ptr() const { return schema_; }
  CoordSet on() const { return on_; }
  std::size_t entry_count() const { return entries_.size(); }
  std::size_t present_count() const;
  bool total() const { return present_count() == entries_.size(); }

  void set(std::size_t index, Measure measure);
  const Measure* find(std::size_t index) const;
  /// Throws MissingKernel for an absent entry.
  const Measure& at(std::size_t index) const;
  Rational eval(std::size_t index, const Event& a) const { return prob(at(index), a); }

  bool operator==(const Kernel& other) const;

 private:
  SchemaPtr schema_;
  CoordSet on_;
  std::vector<std::optional<Measure>> entries_;
};

/// A partial family {K_S} keyed by coordinate subsets.
class Mechanism {
 public:
  using Map = std::map<CoordSet, Kernel>;

  void add(Kernel kernel);
  void erase(CoordSet s) { kernels_.erase(s); }
  const Kernel* find(CoordSet s) const;
  /// Throws MissingKernel when absent.
  const Kernel& at(CoordSet s) const;
  bool contains(CoordSet s) const { return kernels_.count(s) != 0; }
  std::size_t size() const { return kernels_.size(); }
  Map::const_iterator begin() const { return kernels_.begin(); }
  Map::const_iterator end() const { return kernels_.end(); }
  /// Every subset of the first `coord_count` coordinates has a total kernel.
  bool complete(std::size_t coord_count) const;

  bool operator==(const Mechanism& other) const { return kernels_ == other.kernels_; }

 private:
  Map kernels_;
};

/// A (counterfactual) causal space: schema with world labels, observational
/// measure and mechanism. A space with only the trivial kernel is a plain
/// counterfactual probability space.
class CfSpace {
 public:
  explicit CfSpace(Measure p);
  /// K_empty is filled in from P when the mechanism lacks it.
  CfSpace(Measure p, Mechanism mechanism);

  const SchemaPtr& schema_ptr() const { return measure_.schema_ptr(); }
  const SpaceSchema& schema() const { return measure_.schema(); }
  const Measure& measure() const { return measure_; }
  const Mechanism& mechanism() const { return mechanism_; }

  bool operator==(const CfSpace& other) const {
    return measure_ == other.measure_ && mechanism_ == other.mechanism_;
  }

 private:
  Measure measure_;
  Mechanism mechanism_;
};

enum class Axiom { TrivialIntervention, InterventionalDeterminism, NoCrossWorldEffect };

std::string axiom_name(Axiom axiom);

struct AxiomViolation {
  Axiom axiom;
  CoordSet on;
  std::optional<std::size_t> entry;    // omega_S, indexed in Omega_S
  std::optional<std::size_t> witness;  // offending outcome (or world atom)
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Axiom (i) against P and the support condition on every present entry.
/// Violations are data, never exceptions.
AxiomReport check_axioms(const CfSpace& space);

/// Outcomes where an entry puts mass outside its own fiber, if any.
std::optional<std::size_t> support_violation(const Kernel& kernel, std::size_t entry);

struct DerivationReport {
  /// Kernels of the original mechanism whose prerequisite K_{S u U} is absent.
  std::vector<CoordSet> underived;
  /// Derived kernels with some entries missing.
  std::vector<CoordSet> partial;
};

/// do(U, Q): Q is a measure on schema.restrict(U). Throws MissingKernel when
/// K_U lacks an entry in the support of Q.
CfSpace intervene(const CfSpace& space, CoordSet u, const Measure& q, DerivationReport* report = nullptr);

/// The trivial measure on Omega_empty.
Measure trivial_measure(const SpaceSchema& schema);

/// Conditions P and every kernel entry on G. Entries with K_S(omega, G) = 0
/// are dropped. Throws ConditioningUndefined when P(G) = 0.
CfSpace condition(const CfSpace& space, const Event& g);

enum class EffectKind { NoEffect, Active, Dormant, Undetermined };

std::string effect_name(EffectKind kind);

struct EffectWitness {
  CoordSet on;
  std::size_t entry = 0;
  Rational value;
  /// Reference kernel: empty set with entry 0 means P itself.
  CoordSet reference_on;
  std::size_t reference_entry = 0;
  Rational reference;
};

struct EffectVerdict {
  EffectKind kind = EffectKind::Undetermined;
  std::optional<EffectWitness> witness;
  /// Kernel keys whose absence (or partiality) blocked certification.
  std::vector<CoordSet> missing;
  /// No present pair (S, S \ U) disagrees on A.
  bool present_pairs_agree = true;
};

EffectVerdict classify_effect(const CfSpace& space, CoordSet u, const Event& a);

struct ConditionalEffectRow {
  std::size_t entry = 0;
  bool missing = false;
  /// K_U(omega, .)_G(A); nullopt when missing or K_U(omega, G) = 0.
  std::optional<Rational> intervened;
};

struct ConditionalEffect {
  bool active = false;
  std::optional<std::size_t> witness;
  Rational observational;
  std::vector<ConditionalEffectRow> rows;
};

/// Throws ConditioningUndefined when P(G) = 0 and MissingKernel when K_U is absent.
ConditionalEffect conditional_active_effect(const CfSpace& space, CoordSet u, const Event& a,
                                            const Event& g);

/// The four causal relations below quantify over every omega_U, so they
/// require a total K_U (MissingKernel otherwise).
bool causal_independent(const CfSpace& space, CoordSet u, const Event& a, const Event& b);
bool causal_independent_sigmas(const CfSpace& space, CoordSet u, const Partition& s1, const Partition& s2);
bool causally_equal(const CfSpace& space, CoordSet u, const Event& a, const Event& b);
bool causally_synchronized(const CfSpace& space, CoordSet u, const Partition& s1, const Partition& s2);

/// K_U(omega, A) = P_{H_U}(omega, A) on every P-positive atom of H_U. A
/// disagreeing present entry decides `false` even when others are missing.
bool is_source(const CfSpace& space, CoordSet u, const Event& a);
bool global_source(const CfSpace& space, CoordSet u);

struct FundamentalReport {
  bool kernel_preserved = true;
  bool global_source = true;
  std::optional<std::size_t> witness_entry;
  bool ok() const { return kernel_preserved && global_source; }
};

/// After do(U, Q): the new K_U equals the old one, and it is a version of the
/// new measure conditioned on H_U.
FundamentalReport verify_fundamental(const CfSpace& space, CoordSet u, const Measure& q);

}  // namespace cfs
