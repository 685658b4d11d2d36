#include "cfs/measure.hpp"

#include <map>

#include "cfs/error.hpp"

namespace cfs {

Measure::Measure(SchemaPtr schema, std::vector<Rational> weights)
    : schema_(std::move(schema)), weights_(std::move(weights)) {
  if (weights_.size() != schema_->outcome_count()) {
    throw MeasureError("measure has " + std::to_string(weights_.size()) + " weights for " +
                       std::to_string(schema_->outcome_count()) + " outcomes");
  }
  Rational total = 0;
  for (std::size_t w = 0; w < weights_.size(); ++w) {
    weights_[w].canonicalize();
    if (weights_[w] < 0) {
      throw MeasureError("negative weight " + to_string(weights_[w]) + " at " +
                         schema_->describe_outcome(w));
    }
    total += weights_[w];
  }
  if (total != 1) {
    throw MeasureError("weights sum to " + to_string(total) + ", shortfall " + to_string(Rational(1) - total));
  }
}

Measure Measure::uniform(SchemaPtr schema) {
  auto n = schema->outcome_count();
  return Measure(std::move(schema), std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))));
}

Measure Measure::point(SchemaPtr schema, std::size_t outcome) {
  std::vector<Rational> w(schema->outcome_count(), 0);
  w.at(outcome) = 1;
  return Measure(std::move(schema), std::move(w));
}

Event Measure::support() const {
  std::vector<bool> members(weights_.size());
  for (std::size_t w = 0; w < weights_.size(); ++w) members[w] = weights_[w] > 0;
  return Event(schema_, std::move(members));
}

bool Measure::operator==(const Measure& other) const {
  return same_schema(schema_, other.schema_) && weights_ == other.weights_;
}

Rational prob(const Measure& p, const Event& a) {
  require_same_schema(p.schema_ptr(), a.schema_ptr(), "prob");
  Rational total = 0;
  for (std::size_t w = 0; w < a.bits().size(); ++w) {
    if (a.contains(w)) total += p.weight(w);
  }
  return total;
}

Measure dirac(const SchemaPtr& schema, std::size_t outcome) { return Measure::point(schema, outcome); }

Measure dirac(const SpaceSchema& schema, CoordSet s, std::size_t index) {
  return Measure::point(std::make_shared<const SpaceSchema>(schema.restrict(s)), index);
}

Measure marginal(const Measure& p, CoordSet s) {
  const auto& schema = p.schema();
  auto map = schema.projection_map(s);
  std::vector<Rational> weights(schema.projection_count(s), 0);
  for (std::size_t w = 0; w < map.size(); ++w) weights[map[w]] += p.weight(w);
  return Measure(std::make_shared<const SpaceSchema>(schema.restrict(s)), std::move(weights));
}

Measure condition_event(const Measure& p, const Event& g) {
  auto mass = prob(p, g);
  if (mass == 0) throw ConditioningUndefined("conditioning on an event of probability zero");
  std::vector<Rational> weights(p.weights().size(), 0);
  for (std::size_t w = 0; w < weights.size(); ++w) {
    if (g.contains(w)) weights[w] = p.weight(w) / mass;
  }
  return Measure(p.schema_ptr(), std::move(weights));
}

AtomConditional condition_sigma(const Measure& p, const Partition& sigma) {
  require_same_schema(p.schema_ptr(), sigma.schema_ptr(), "condition_sigma");
  std::vector<Rational> mass(sigma.block_count(), 0);
  for (std::size_t w = 0; w < p.weights().size(); ++w) mass[sigma.block_of(w)] += p.weight(w);

  std::vector<std::vector<Rational>> weights(sigma.block_count(),
                                             std::vector<Rational>(p.weights().size(), 0));
  for (std::size_t w = 0; w < p.weights().size(); ++w) {
    auto b = sigma.block_of(w);
    if (mass[b] > 0) weights[b][w] = p.weight(w) / mass[b];
  }
  AtomConditional out{sigma, {}, {}};
  out.table.reserve(sigma.block_count());
  for (std::size_t b = 0; b < sigma.block_count(); ++b) {
    bool null = mass[b] == 0;
    out.null_atom.push_back(null);
    out.table.push_back(null ? p : Measure(p.schema_ptr(), std::move(weights[b])));
  }
  return out;
}

AtomConditional condition_sigma(const Measure& p, CoordSet s) {
  return condition_sigma(p, atoms_of(p.schema_ptr(), s));
}

bool independent(const Measure& p, const Event& a, const Event& b) {
  return prob(p, a & b) == prob(p, a) * prob(p, b);
}

bool independent_given(const Measure& p, const Event& a, const Event& b, const Event& g) {
  return independent(condition_event(p, g), a, b);
}

bool independent_given(const Measure& p, const Event& a, const Event& b, const Partition& given) {
  auto cond = condition_sigma(p, given);
  for (std::size_t k = 0; k < cond.table.size(); ++k) {
    if (!cond.null_atom[k] && !independent(cond.table[k], a, b)) return false;
  }
  return true;
}

bool independent_sigmas(const Measure& p, const Partition& s1, const Partition& s2) {
  require_same_schema(p.schema_ptr(), s1.schema_ptr(), "independent_sigmas");
  require_same_schema(p.schema_ptr(), s2.schema_ptr(), "independent_sigmas");
  std::vector<Rational> m1(s1.block_count(), 0), m2(s2.block_count(), 0);
  std::vector<Rational> joint(s1.block_count() * s2.block_count(), 0);
  for (std::size_t w = 0; w < p.weights().size(); ++w) {
    const auto& x = p.weight(w);
    if (x == 0) continue;
    auto a = s1.block_of(w);
    auto b = s2.block_of(w);
    m1[a] += x;
    m2[b] += x;
    joint[a * s2.block_count() + b] += x;
  }
  for (std::size_t a = 0; a < m1.size(); ++a) {
    for (std::size_t b = 0; b < m2.size(); ++b) {
      if (joint[a * s2.block_count() + b] != m1[a] * m2[b]) return false;
    }
  }
  return true;
}

bool independent_sigmas(const Measure& p, CoordSet s1, CoordSet s2) {
  return independent_sigmas(p, atoms_of(p.schema_ptr(), s1), atoms_of(p.schema_ptr(), s2));
}

bool independent_sigmas_given(const Measure& p, const Partition& s1, const Partition& s2,
                              const Event& g) {
  return independent_sigmas(condition_event(p, g), s1, s2);
}

bool independent_sigmas_given(const Measure& p, const Partition& s1, const Partition& s2,
                              const Partition& given) {
  auto cond = condition_sigma(p, given);
  for (std::size_t k = 0; k < cond.table.size(); ++k) {
    if (!cond.null_atom[k] && !independent_sigmas(cond.table[k], s1, s2)) return false;
  }
  return true;
}

bool as_equal(const Measure& p, const Event& a, const Event& b) { return prob(p, a ^ b) == 0; }

bool as_equal_given(const Measure& p, const Event& g, const Event& a, const Event& b) {
  return as_equal(condition_event(p, g), a, b);
}

bool synchronized(const Measure& p, const Partition& s1, const Partition& s2) {
  require_same_schema(p.schema_ptr(), s1.schema_ptr(), "synchronized");
  require_same_schema(p.schema_ptr(), s2.schema_ptr(), "synchronized");
  // On the support, block membership must determine each other both ways.
  std::map<std::size_t, std::size_t> forward, backward;
  for (std::size_t w = 0; w < p.weights().size(); ++w) {
    if (p.weight(w) == 0) continue;
    auto a = s1.block_of(w);
    auto b = s2.block_of(w);
    auto [fi, fnew] = forward.emplace(a, b);
    if (!fnew && fi->second != b) return false;
    auto [bi, bnew] = backward.emplace(b, a);
    if (!bnew && bi->second != a) return false;
  }
  return true;
}

bool synchronized(const Measure& p, CoordSet s1, CoordSet s2) {
  return synchronized(p, atoms_of(p.schema_ptr(), s1), atoms_of(p.schema_ptr(), s2));
}

}  // namespace cfs
