#include "cfs/mechanism.hpp"

#include <algorithm>

#include "cfs/error.hpp"

namespace cfs {

// Kernel

Kernel::Kernel(SchemaPtr schema, CoordSet on) : schema_(std::move(schema)), on_(on) {
  if (!on_.subset_of(schema_->all())) throw SchemaError("kernel coordinate set outside schema");
  entries_.resize(schema_->projection_count(on_));
}

std::size_t Kernel::present_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.has_value();
  return n;
}

void Kernel::set(std::size_t index, Measure measure) {
  require_same_schema(schema_, measure.schema_ptr(), "kernel entry");
  entries_.at(index) = std::move(measure);
}

const Measure* Kernel::find(std::size_t index) const {
  const auto& e = entries_.at(index);
  return e ? &*e : nullptr;
}

const Measure& Kernel::at(std::size_t index) const {
  if (const auto* m = find(index)) return *m;
  throw MissingKernel("kernel on " + schema_->describe(on_) + " has no entry for " +
                      schema_->describe_partial(on_, index));
}

bool Kernel::operator==(const Kernel& other) const {
  return on_ == other.on_ && same_schema(schema_, other.schema_) && entries_ == other.entries_;
}

// Mechanism

void Mechanism::add(Kernel kernel) {
  auto key = kernel.on();
  kernels_.insert_or_assign(key, std::move(kernel));
}

const Kernel* Mechanism::find(CoordSet s) const {
  auto it = kernels_.find(s);
  return it == kernels_.end() ? nullptr : &it->second;
}

const Kernel& Mechanism::at(CoordSet s) const {
  if (const auto* k = find(s)) return *k;
  std::string where = kernels_.empty() ? "" : " " + kernels_.begin()->second.schema_ptr()->describe(s);
  throw MissingKernel("mechanism has no kernel on" + (where.empty() ? " the requested set" : where));
}

bool Mechanism::complete(std::size_t coord_count) const {
  if (coord_count >= 63 || kernels_.size() != (std::size_t{1} << coord_count)) return false;
  for (const auto& [key, k] : kernels_) {
    if (!k.total()) return false;
  }
  return true;
}

// CfSpace

CfSpace::CfSpace(Measure p) : CfSpace(std::move(p), Mechanism{}) {}

CfSpace::CfSpace(Measure p, Mechanism mechanism) : measure_(std::move(p)), mechanism_(std::move(mechanism)) {
  for (const auto& [key, k] : mechanism_) require_same_schema(schema_ptr(), k.schema_ptr(), "mechanism");
  if (!mechanism_.contains(CoordSet{})) {
    Kernel trivial(schema_ptr(), CoordSet{});
    trivial.set(0, measure_);
    mechanism_.add(std::move(trivial));
  }
}

std::string axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::TrivialIntervention: return "trivial-intervention";
    case Axiom::InterventionalDeterminism: return "interventional-determinism";
    case Axiom::NoCrossWorldEffect: return "no-cross-world-effect";
  }
  return "unknown";
}

std::optional<std::size_t> support_violation(const Kernel& kernel, std::size_t entry) {
  const auto* m = kernel.find(entry);
  if (!m) return std::nullopt;
  const auto& schema = *kernel.schema_ptr();
  for (std::size_t w = 0; w < schema.outcome_count(); ++w) {
    if (m->weight(w) != 0 && schema.project(w, kernel.on()) != entry) return w;
  }
  return std::nullopt;
}

AxiomReport check_axioms(const CfSpace& space) {
  AxiomReport report;
  const auto& schema = space.schema();
  const auto& trivial = space.mechanism().at(CoordSet{});
  if (const auto* k0 = trivial.find(0)) {
    for (std::size_t w = 0; w < schema.outcome_count(); ++w) {
      if (k0->weight(w) != space.measure().weight(w)) {
        report.violations.push_back({Axiom::TrivialIntervention, CoordSet{}, 0, w,
                                     "K_{} puts " + to_string(k0->weight(w)) + " on " +
                                         schema.describe_outcome(w) + " where P puts " +
                                         to_string(space.measure().weight(w))});
        break;
      }
    }
  } else {
    report.violations.push_back({Axiom::TrivialIntervention, CoordSet{}, 0, std::nullopt, "K_{} has no entry"});
  }
  for (const auto& [key, kernel] : space.mechanism()) {
    for (std::size_t e = 0; e < kernel.entry_count(); ++e) {
      if (auto w = support_violation(kernel, e)) {
        report.violations.push_back({Axiom::InterventionalDeterminism, key, e, *w,
                                     "K_" + schema.describe(key) + schema.describe_partial(key, e) + " puts " +
                                         to_string(kernel.at(e).weight(*w)) + " on " +
                                         schema.describe_outcome(*w)});
      }
    }
  }
  return report;
}

Measure trivial_measure(const SpaceSchema& schema) {
  return Measure(std::make_shared<const SpaceSchema>(schema.restrict(CoordSet{})), {Rational(1)});
}

namespace {

void accumulate(std::vector<Rational>& into, const Rational& scale, const Measure& m) {
  for (std::size_t w = 0; w < into.size(); ++w) {
    if (m.weight(w) != 0) into[w] += scale * m.weight(w);
  }
}

// Enumerates subsets of `set` (including empty and `set` itself).
template <typename F>
void for_each_subset(CoordSet set, F&& f) {
  std::uint64_t bits = set.bits();
  std::uint64_t sub = 0;
  while (true) {
    f(CoordSet::from_bits(sub));
    if (sub == bits) break;
    sub = (sub - bits) & bits;
  }
}

}  // namespace

CfSpace intervene(const CfSpace& space, CoordSet u, const Measure& q, DerivationReport* report) {
  const auto& schema = space.schema();
  const auto& mech = space.mechanism();
  if (!(q.schema() == schema.restrict(u))) {
    throw SchemaError("intervention measure must live on " + schema.describe(u));
  }
  const auto& ku = mech.at(u);
  const auto n = schema.outcome_count();

  std::vector<Rational> weights(n, 0);
  for (std::size_t x = 0; x < q.weights().size(); ++x) {
    if (q.weight(x) != 0) accumulate(weights, q.weight(x), ku.at(x));
  }
  Measure p_new(space.schema_ptr(), std::move(weights));

  Mechanism derived;
  DerivationReport local;
  for (const auto& [key, kr] : mech) {
    if (!u.subset_of(key)) continue;
    const CoordSet base = key - u;
    for_each_subset(u, [&](CoordSet v) {
      const CoordSet s = base | v;
      const CoordSet rest = u - s;
      // Marginal of Q on U \ S.
      std::vector<Rational> q_rest(schema.projection_count(rest), 0);
      for (std::size_t x = 0; x < q.weights().size(); ++x) {
        if (q.weight(x) != 0) q_rest[schema.restrict_partial(u, x, rest)] += q.weight(x);
      }
      Kernel ks(space.schema_ptr(), s);
      for (std::size_t si = 0; si < ks.entry_count(); ++si) {
        std::vector<Rational> acc(n, 0);
        bool complete = true;
        for (std::size_t r = 0; r < q_rest.size() && complete; ++r) {
          if (q_rest[r] == 0) continue;
          const auto* m = kr.find(schema.join(s, si, rest, r));
          if (!m) {
            complete = false;
          } else {
            accumulate(acc, q_rest[r], *m);
          }
        }
        if (complete) ks.set(si, Measure(space.schema_ptr(), std::move(acc)));
      }
      if (ks.present_count() == 0) return;
      if (!ks.total()) local.partial.push_back(s);
      derived.add(std::move(ks));
    });
  }
  for (const auto& [key, k] : mech) {
    if (!derived.contains(key)) local.underived.push_back(key);
  }
  if (report) *report = std::move(local);
  return CfSpace(std::move(p_new), std::move(derived));
}

CfSpace condition(const CfSpace& space, const Event& g) {
  Measure p = condition_event(space.measure(), g);
  Mechanism mech;
  for (const auto& [key, kernel] : space.mechanism()) {
    Kernel k(space.schema_ptr(), key);
    for (std::size_t e = 0; e < kernel.entry_count(); ++e) {
      const auto* m = kernel.find(e);
      if (m && prob(*m, g) != 0) k.set(e, condition_event(*m, g));
    }
    if (k.present_count() != 0) mech.add(std::move(k));
  }
  return CfSpace(std::move(p), std::move(mech));
}

std::string effect_name(EffectKind kind) {
  switch (kind) {
    case EffectKind::NoEffect: return "no-effect";
    case EffectKind::Active: return "active";
    case EffectKind::Dormant: return "dormant";
    case EffectKind::Undetermined: return "undetermined";
  }
  return "unknown";
}

EffectVerdict classify_effect(const CfSpace& space, CoordSet u, const Event& a) {
  require_same_schema(space.schema_ptr(), a.schema_ptr(), "classify_effect");
  EffectVerdict verdict;
  if (u.empty()) {
    verdict.kind = EffectKind::NoEffect;
    return verdict;
  }
  const auto& schema = space.schema();
  const auto& mech = space.mechanism();
  const Rational pa = prob(space.measure(), a);

  bool active_decided = false;
  if (const auto* ku = mech.find(u)) {
    for (std::size_t e = 0; e < ku->entry_count(); ++e) {
      const auto* m = ku->find(e);
      if (!m) continue;
      Rational v = prob(*m, a);
      if (v != pa) {
        verdict.kind = EffectKind::Active;
        verdict.witness = EffectWitness{u, e, v, CoordSet{}, 0, pa};
        verdict.present_pairs_agree = false;
        return verdict;
      }
    }
    active_decided = ku->total();
  }
  if (!active_decided) verdict.missing.push_back(u);

  std::optional<EffectWitness> dormant;
  for (const auto& [s, ks] : mech) {
    if ((s & u).empty()) continue;
    const CoordSet reduced = s - u;
    const auto* kr = mech.find(reduced);
    if (!kr) continue;
    for (std::size_t e = 0; e < ks.entry_count() && !dormant; ++e) {
      const auto* m = ks.find(e);
      if (!m) continue;
      auto re = schema.restrict_partial(s, e, reduced);
      const auto* mr = kr->find(re);
      if (!mr) continue;
      Rational v = prob(*m, a);
      Rational r = prob(*mr, a);
      if (v != r) dormant = EffectWitness{s, e, v, reduced, re, r};
    }
    if (dormant) break;
  }
  verdict.present_pairs_agree = !dormant.has_value();
  if (dormant && active_decided) {
    verdict.kind = EffectKind::Dormant;
    verdict.witness = dormant;
    return verdict;
  }
  if (!dormant && active_decided && mech.complete(schema.coord_count())) {
    verdict.kind = EffectKind::NoEffect;
    return verdict;
  }

  // List what would be needed for a full certification over P(T).
  constexpr std::size_t kMissingLimit = 64;
  const std::size_t t = schema.coord_count();
  auto note = [&](CoordSet s) {
    const auto* k = mech.find(s);
    if ((!k || !k->total()) && std::find(verdict.missing.begin(), verdict.missing.end(), s) == verdict.missing.end()) {
      verdict.missing.push_back(s);
    }
  };
  if (t < 63) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << t) && verdict.missing.size() < kMissingLimit; ++bits) {
      CoordSet s = CoordSet::from_bits(bits);
      if ((s & u).empty()) continue;
      note(s);
      note(s - u);
    }
  }
  if (verdict.missing.empty()) verdict.missing.push_back(u);
  verdict.kind = EffectKind::Undetermined;
  return verdict;
}

ConditionalEffect conditional_active_effect(const CfSpace& space, CoordSet u, const Event& a, const Event& g) {
  const auto& p = space.measure();
  const Rational pg = prob(p, g);
  if (pg == 0) throw ConditioningUndefined("conditioning event has probability zero");
  const auto& ku = space.mechanism().at(u);
  ConditionalEffect out;
  out.observational = prob(p, a & g) / pg;
  const Event ag = a & g;
  for (std::size_t e = 0; e < ku.entry_count(); ++e) {
    ConditionalEffectRow row{e, false, std::nullopt};
    if (const auto* m = ku.find(e)) {
      Rational kg = prob(*m, g);
      if (kg > 0) {
        row.intervened = prob(*m, ag) / kg;
        if (*row.intervened != out.observational && !out.active) {
          out.active = true;
          out.witness = e;
        }
      }
    } else {
      row.missing = true;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace {

const Kernel& total_kernel(const CfSpace& space, CoordSet u) {
  const auto& k = space.mechanism().at(u);
  if (!k.total()) {
    throw MissingKernel("kernel on " + space.schema().describe(u) + " is not specified for every value");
  }
  return k;
}

}  // namespace

bool causal_independent(const CfSpace& space, CoordSet u, const Event& a, const Event& b) {
  const auto& k = total_kernel(space, u);
  for (std::size_t e = 0; e < k.entry_count(); ++e) {
    if (!independent(k.at(e), a, b)) return false;
  }
  return true;
}

bool causal_independent_sigmas(const CfSpace& space, CoordSet u, const Partition& s1, const Partition& s2) {
  const auto& k = total_kernel(space, u);
  for (std::size_t e = 0; e < k.entry_count(); ++e) {
    if (!independent_sigmas(k.at(e), s1, s2)) return false;
  }
  return true;
}

bool causally_equal(const CfSpace& space, CoordSet u, const Event& a, const Event& b) {
  const auto& k = total_kernel(space, u);
  for (std::size_t e = 0; e < k.entry_count(); ++e) {
    if (!as_equal(k.at(e), a, b)) return false;
  }
  return true;
}

bool causally_synchronized(const CfSpace& space, CoordSet u, const Partition& s1, const Partition& s2) {
  const auto& k = total_kernel(space, u);
  for (std::size_t e = 0; e < k.entry_count(); ++e) {
    if (!synchronized(k.at(e), s1, s2)) return false;
  }
  return true;
}

namespace {

// Shared scan for local and global sources. `agrees` compares a kernel entry
// with the conditional measure on the same atom.
template <typename Agrees>
bool source_scan(const CfSpace& space, CoordSet u, Agrees&& agrees) {
  const auto& ku = space.mechanism().at(u);
  auto cond = condition_sigma(space.measure(), u);
  bool missing = false;
  for (std::size_t e = 0; e < ku.entry_count(); ++e) {
    if (cond.null_atom[e]) continue;
    const auto* m = ku.find(e);
    if (!m) {
      missing = true;
      continue;
    }
    if (!agrees(*m, cond.table[e])) return false;
  }
  if (missing) {
    throw MissingKernel("kernel on " + space.schema().describe(u) + " lacks entries on positive atoms");
  }
  return true;
}

}  // namespace

bool is_source(const CfSpace& space, CoordSet u, const Event& a) {
  return source_scan(space, u, [&](const Measure& k, const Measure& c) { return prob(k, a) == prob(c, a); });
}

bool global_source(const CfSpace& space, CoordSet u) {
  return source_scan(space, u, [](const Measure& k, const Measure& c) { return k == c; });
}

FundamentalReport verify_fundamental(const CfSpace& space, CoordSet u, const Measure& q) {
  FundamentalReport report;
  auto after = intervene(space, u, q);
  const auto& before_k = space.mechanism().at(u);
  const auto* after_k = after.mechanism().find(u);
  for (std::size_t e = 0; e < before_k.entry_count(); ++e) {
    const auto* m = before_k.find(e);
    if (!m) continue;
    const auto* m2 = after_k ? after_k->find(e) : nullptr;
    if (!m2 || !(*m == *m2)) {
      report.kernel_preserved = false;
      report.witness_entry = e;
      break;
    }
  }
  const auto& k_new = after.mechanism().at(u);
  auto cond = condition_sigma(after.measure(), u);
  for (std::size_t e = 0; e < k_new.entry_count(); ++e) {
    if (cond.null_atom[e]) continue;
    const auto* m = k_new.find(e);
    if (!m || !(*m == cond.table[e])) {
      report.global_source = false;
      if (!report.witness_entry) report.witness_entry = e;
      break;
    }
  }
  return report;
}

}  // namespace cfs
