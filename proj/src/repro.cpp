#include "cfs/repro.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cfs/compilers.hpp"
#include "cfs/counterfactual.hpp"
#include "cfs/error.hpp"
#include "cfs/fixtures.hpp"
#include "cfs/space_format.hpp"

namespace cfs {

namespace {

struct Expectation {
  const char* target;
  const char* label;
  const char* expected;
};

// Values as printed in the examples, converted to exact fractions.
const Expectation kExpected[] = {
    {"exam", "P(CF.exam=P | F.class=Y, F.exam=P)", "38/43"},
    {"exam", "P(CF.class=Y | F.class=Y)", "13/16"},
    {"exam", "P(CF.exam=P | F.class=N, F.exam=F, CF.class=Y)", "1/5"},
    {"exam", "P(CF.exam=P | F.class=N, F.exam=F)", "3/17"},
    {"exam", "P(F.class=Y, F.exam=P)", "43/100"},
    {"exam", "do(CF.class=Y): P(CF.exam=P)", "16/25"},
    {"exam", "do(CF.class=N): P(CF.exam=P)", "3/5"},
    {"exam", "do(CF.class=Y): P(CF.exam=P | F.class=N, F.exam=F)", "4/17"},
    {"exam", "do(CF.class=N): P(CF.exam=P | F.exam=P)", "26/31"},
    {"exam", "P(CF.exam=P | F.exam=P)", "27/31"},
    {"exam", "do(CF.class=Y): P(CF.exam=P | F.exam=P)", "55/62"},
    {"exam", "do(CF.class=Y): P(CF.exam=P | F.class=Y, F.exam=P)", "39/43"},
    {"exam", "do(CF.class=N) vs no intervention, given F.class=N, F.exam=F", "3/17 = 3/17"},
    {"exam", "effect of {CF.class} on CF.exam=P", "active"},
    {"exam", "symmetric under F <-> CF", "true"},
    {"exam", "axiom and cross-world check", "ok"},
    {"star", "P(F.star=Y, CF.star=N)", "19/100"},
    {"star", "P(F.star=Y xor CF.star=Y)", "19/50"},
    {"star", "F.star=Y and CF.star=Y a.s. equal", "false"},
    {"star", "a.s. equal given F.sky=C, CF.sky=C", "true"},
    {"star", "F and CF synchronised given F.sky=C, CF.sky=C", "true"},
    {"disease", "P(CF.status=S | F.status=S)", "89/90"},
    {"disease", "P(CF.status=D | F.status=D)", "9/10"},
    {"disease", "symmetric under F <-> CF", "true"},
    {"disease-asym", "P(CF.status=S | F.status=S)", "2/3"},
    {"disease-asym", "P(CF.status=S)", "601/1000"},
    {"disease-asym", "symmetric under F <-> CF", "false"},
    {"dormant", "P(W.w3=0)", "1/2"},
    {"dormant", "effect of {W.w2} on W.w3=0", "active: 1/4 vs 1/2"},
    {"dormant", "effect of {W.w1} on W.w3=0", "dormant: 1/8 vs 1/4"},
    {"dormant", "effect of {W.w1} on W.w3=0 without W.w2", "undetermined, present kernels agree"},
    {"dormant", "axiom check", "ok"},
    {"exam-cycle", "axiom and cross-world check", "ok"},
    {"exam-cycle", "do(CF.exam=P): P(CF.class=N)", "1"},
    {"exam-cycle", "compile a cyclic SCM over class and exam", "rejected"},
};

using Values = std::map<std::string, std::string>;

CfSpace load(std::string_view name) {
  auto text = fixture_text(name);
  if (!text) throw std::logic_error("missing bundled fixture " + std::string(name));
  return parse_space(*text).space();
}

Event ev(const CfSpace& s, const std::vector<std::pair<std::string, std::string>>& a) {
  return cylinder(s.schema_ptr(), a);
}

Rational given(const Measure& p, const Event& a, const Event& g) { return prob(condition_event(p, g), a); }

CfSpace do_point(const CfSpace& s, const std::string& coord, const std::string& label) {
  const auto& schema = s.schema();
  auto pos = schema.require(coord);
  CoordSet u{pos};
  return intervene(s, u, dirac(schema, u, schema.require_label(pos, label)));
}

std::string verdict_text(const EffectVerdict& v) {
  std::string out = effect_name(v.kind);
  if (v.witness) out += ": " + to_string(v.witness->value) + " vs " + to_string(v.witness->reference);
  if (v.kind == EffectKind::Undetermined && v.present_pairs_agree) out += ", present kernels agree";
  return out;
}

std::string check_text(const CfSpace& s) {
  return check_axioms(s).ok() && check_cross_world(s).ok() ? "ok" : "violations";
}

std::string truth(bool b) { return b ? "true" : "false"; }

Values exam() {
  Values v;
  auto s = load("exam");
  const auto& p = s.measure();
  auto cf_pass = ev(s, {{"CF.exam", "P"}});
  auto f_yp = ev(s, {{"F.class", "Y"}, {"F.exam", "P"}});
  auto f_nf = ev(s, {{"F.class", "N"}, {"F.exam", "F"}});
  auto f_pass = ev(s, {{"F.exam", "P"}});
  v["P(CF.exam=P | F.class=Y, F.exam=P)"] = to_string(given(p, cf_pass, f_yp));
  v["P(CF.class=Y | F.class=Y)"] = to_string(given(p, ev(s, {{"CF.class", "Y"}}), ev(s, {{"F.class", "Y"}})));
  v["P(CF.exam=P | F.class=N, F.exam=F, CF.class=Y)"] = to_string(given(p, cf_pass, f_nf & ev(s, {{"CF.class", "Y"}})));
  v["P(CF.exam=P | F.class=N, F.exam=F)"] = to_string(given(p, cf_pass, f_nf));
  v["P(F.class=Y, F.exam=P)"] = to_string(prob(p, f_yp));

  auto yes = do_point(s, "CF.class", "Y");
  auto no = do_point(s, "CF.class", "N");
  v["do(CF.class=Y): P(CF.exam=P)"] = to_string(prob(yes.measure(), cf_pass));
  v["do(CF.class=N): P(CF.exam=P)"] = to_string(prob(no.measure(), cf_pass));
  v["do(CF.class=Y): P(CF.exam=P | F.class=N, F.exam=F)"] = to_string(given(yes.measure(), cf_pass, f_nf));
  v["do(CF.class=N): P(CF.exam=P | F.exam=P)"] = to_string(given(no.measure(), cf_pass, f_pass));
  v["P(CF.exam=P | F.exam=P)"] = to_string(given(p, cf_pass, f_pass));
  v["do(CF.class=Y): P(CF.exam=P | F.exam=P)"] = to_string(given(yes.measure(), cf_pass, f_pass));
  v["do(CF.class=Y): P(CF.exam=P | F.class=Y, F.exam=P)"] = to_string(given(yes.measure(), cf_pass, f_yp));

  // Case (d) through the conditional-effect operation: the N row is not a witness.
  CoordSet u{s.schema().require("CF.class")};
  auto ce = conditional_active_effect(s, u, cf_pass, f_nf);
  const auto& row_n = ce.rows[s.schema().require_label(s.schema().require("CF.class"), "N")];
  Rational n_value = row_n.intervened.value_or(Rational(-1));
  v["do(CF.class=N) vs no intervention, given F.class=N, F.exam=F"] =
      to_string(n_value) + (n_value == ce.observational ? " = " : " != ") + to_string(ce.observational);
  v["effect of {CF.class} on CF.exam=P"] = effect_name(classify_effect(s, u, cf_pass).kind);
  v["symmetric under F <-> CF"] = truth(is_symmetric(s, WorldMirror(s.schema_ptr(), "F", "CF")).ok());
  v["axiom and cross-world check"] = check_text(s);
  return v;
}

Values star() {
  Values v;
  auto s = load("star");
  const auto& p = s.measure();
  auto a = ev(s, {{"F.star", "Y"}});
  auto b = ev(s, {{"CF.star", "Y"}});
  auto clear = ev(s, {{"F.sky", "C"}, {"CF.sky", "C"}});
  v["P(F.star=Y, CF.star=N)"] = to_string(prob(p, a & ~b));
  v["P(F.star=Y xor CF.star=Y)"] = to_string(prob(p, a ^ b));
  v["F.star=Y and CF.star=Y a.s. equal"] = truth(as_equal(p, a, b));
  v["a.s. equal given F.sky=C, CF.sky=C"] = truth(as_equal_given(p, clear, a, b));
  const auto& schema = s.schema();
  auto pg = condition_event(p, clear);
  v["F and CF synchronised given F.sky=C, CF.sky=C"] =
      truth(synchronized(pg, schema.world_coords(0), schema.world_coords(1)));
  return v;
}

Values disease(std::string_view name) {
  Values v;
  auto s = load(name);
  const auto& p = s.measure();
  auto fs = ev(s, {{"F.status", "S"}});
  auto cs = ev(s, {{"CF.status", "S"}});
  if (name == "disease") {
    v["P(CF.status=S | F.status=S)"] = to_string(given(p, cs, fs));
    v["P(CF.status=D | F.status=D)"] = to_string(given(p, ~cs, ~fs));
  } else {
    v["P(CF.status=S | F.status=S)"] = to_string(given(p, cs, fs));
    v["P(CF.status=S)"] = to_string(prob(p, cs));
  }
  v["symmetric under F <-> CF"] = truth(is_symmetric(s, WorldMirror(s.schema_ptr(), "F", "CF")).ok());
  return v;
}

Values dormant() {
  Values v;
  auto s = load("dormant");
  const auto& schema = s.schema();
  auto a = ev(s, {{"W.w3", "0"}});
  CoordSet w1{schema.require("W.w1")};
  CoordSet w2{schema.require("W.w2")};
  v["P(W.w3=0)"] = to_string(prob(s.measure(), a));
  v["effect of {W.w2} on W.w3=0"] = verdict_text(classify_effect(s, w2, a));
  v["effect of {W.w1} on W.w3=0"] = verdict_text(classify_effect(s, w1, a));
  CoordSet keep = w1 | CoordSet{schema.require("W.w3")};
  auto m = marginalize(s, keep);
  auto am = cylinder(m.schema_ptr(), {{"W.w3", "0"}});
  v["effect of {W.w1} on W.w3=0 without W.w2"] = verdict_text(classify_effect(m, CoordSet{0}, am));
  v["axiom check"] = check_axioms(s).ok() ? "ok" : "violations";
  return v;
}

ScmModel cyclic_exam_model() {
  ScmModel m;
  m.exogenous = {{"U", {"lo", "hi"}}};
  m.noise = {Rational(1, 2), Rational(1, 2)};
  m.endogenous = {{"class", {"Y", "N"}}, {"exam", {"P", "F"}}};
  // class depends on exam and exam on class.
  m.equations = {{"class", {"exam"}, {"U"}, {1, 0, 1, 1}}, {"exam", {"class"}, {"U"}, {1, 0, 1, 1}}};
  return m;
}

Values exam_cycle() {
  Values v;
  auto s = load("exam-cycle");
  v["axiom and cross-world check"] = check_text(s);
  auto forced = do_point(s, "CF.exam", "P");
  v["do(CF.exam=P): P(CF.class=N)"] = to_string(prob(forced.measure(), ev(s, {{"CF.class", "N"}})));
  try {
    compile_scm(cyclic_exam_model());
    v["compile a cyclic SCM over class and exam"] = "compiled";
  } catch (const CompileError&) {
    v["compile a cyclic SCM over class and exam"] = "rejected";
  }
  return v;
}

Values compute(std::string_view target) {
  if (target == "exam") return exam();
  if (target == "star") return star();
  if (target == "disease" || target == "disease-asym") return disease(target);
  if (target == "dormant") return dormant();
  if (target == "exam-cycle") return exam_cycle();
  throw std::invalid_argument("unknown repro target '" + std::string(target) + "'");
}

}  // namespace

const std::vector<std::string>& repro_targets() {
  static const std::vector<std::string> targets = {"exam", "star", "disease", "disease-asym", "dormant", "exam-cycle"};
  return targets;
}

std::vector<ReproLine> reproduce(std::string_view target) {
  std::vector<std::string> targets;
  if (target == "all") {
    targets = repro_targets();
  } else {
    const auto& known = repro_targets();
    if (std::find(known.begin(), known.end(), target) == known.end()) {
      throw std::invalid_argument("unknown repro target '" + std::string(target) + "'");
    }
    targets.emplace_back(target);
  }
  std::vector<ReproLine> lines;
  for (const auto& t : targets) {
    Values actual;
    std::string failure;
    try {
      actual = compute(t);
    } catch (const std::exception& e) {
      failure = std::string("error: ") + e.what();
    }
    for (const auto& e : kExpected) {
      if (t != e.target) continue;
      ReproLine line{t, e.label, e.expected, "", false};
      auto it = actual.find(e.label);
      line.actual = it != actual.end() ? it->second : (failure.empty() ? "not computed" : failure);
      line.pass = line.actual == line.expected;
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

}  // namespace cfs
