#include "cfs/report.hpp"

#include "cfs/counterfactual.hpp"

namespace cfs {

namespace {

std::string decimal(const Rational& r) { return to_string(r) + " (" + to_decimal(r) + ")"; }

std::string kernel_ref(const SpaceSchema& schema, CoordSet on, std::size_t entry) {
  if (on.empty()) return "P";
  return "K_" + schema.describe(on) + schema.describe_partial(on, entry);
}

}  // namespace

std::string describe_effect(const SpaceSchema& schema, const EffectVerdict& verdict) {
  std::string out = effect_name(verdict.kind);
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    out += ": " + kernel_ref(schema, w.on, w.entry) + " gives " + to_string(w.value) + ", " +
           kernel_ref(schema, w.reference_on, w.reference_entry) + " gives " + to_string(w.reference);
  }
  if (verdict.kind == EffectKind::Undetermined) {
    out += verdict.present_pairs_agree ? " (present kernels agree); missing" : "; missing";
    constexpr std::size_t kShown = 6;
    for (std::size_t i = 0; i < verdict.missing.size() && i < kShown; ++i) {
      out += (i ? ", " : " ") + schema.describe(verdict.missing[i]);
    }
    if (verdict.missing.size() > kShown) out += " and " + std::to_string(verdict.missing.size() - kShown) + " more";
  }
  return out;
}

std::string describe_conditional_effect(const SpaceSchema& schema, CoordSet u, const ConditionalEffect& effect) {
  if (effect.active) {
    const auto& row = effect.rows[*effect.witness];
    return "active at " + schema.describe_partial(u, row.entry) + ": " + decimal(*row.intervened) + " vs " +
           decimal(effect.observational);
  }
  bool missing = false;
  for (const auto& row : effect.rows) missing = missing || row.missing;
  return std::string(missing ? "inactive on present entries" : "inactive") + ": " + decimal(effect.observational);
}

std::size_t write_violations(const CfSpace& space, std::ostream& out) {
  const auto& schema = space.schema();
  auto axioms = check_axioms(space);
  auto cross = check_cross_world(space);
  for (const auto& v : axioms.violations) out << "  " << axiom_name(v.axiom) << ": " << v.detail << "\n";
  for (const auto& v : cross.violations) {
    out << "  " << axiom_name(Axiom::NoCrossWorldEffect) << ": " << describe(schema, v) << "\n";
  }
  return axioms.violations.size() + cross.violations.size();
}

std::size_t write_check_report(const CfSpace& space, std::ostream& out) {
  const auto& schema = space.schema();
  const auto& mech = space.mechanism();
  out << "space: " << schema.coord_count() << " coordinates, " << schema.worlds().size() << " world"
      << (schema.worlds().size() == 1 ? "" : "s") << ", " << schema.outcome_count() << " outcomes, " << mech.size()
      << " kernel" << (mech.size() == 1 ? "" : "s") << "\n";
  for (const auto& [on, k] : mech) {
    out << "  kernel " << schema.describe(on) << ": " << k.present_count() << "/" << k.entry_count() << " entries\n";
  }
  std::size_t n = write_violations(space, out);
  for (const auto& u : check_cross_world(space).uncheckable) {
    out << "  uncheckable: K_" << schema.describe(u.on) << " against K_" << schema.describe(u.reduced) << " in world "
        << schema.worlds()[u.world] << "\n";
  }
  out << (n == 0 ? "axioms: ok" : "axioms: " + std::to_string(n) + (n == 1 ? " violation" : " violations")) << "\n";
  return n;
}

}  // namespace cfs
