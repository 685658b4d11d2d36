#include "cfs/compilers.hpp"
#include "cfs/counterfactual.hpp"
#include "cfs/error.hpp"
#include "cfs/model_format.hpp"
#include "helpers.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

using namespace cfs;
using unit::q;

namespace {

// V_i = U_i for i < n, all binary, uniform noise.
ScmModel copies(std::size_t n) {
  ScmModel m;
  for (std::size_t i = 0; i < n; ++i) {
    auto id = std::to_string(i + 1);
    m.exogenous.push_back({"U" + id, {"0", "1"}});
    m.endogenous.push_back({"V" + id, {"0", "1"}});
    m.equations.push_back({"V" + id, {}, {"U" + id}, {0, 1}});
  }
  m.noise.assign(std::size_t{1} << n, Rational(1, std::size_t{1} << n));
  return m;
}

}  // namespace

TEST_SUITE("compilers") {
  TEST_CASE("chain against hand enumeration") {
    std::string why;
    CHECK_MESSAGE(testing::chain_matches_hand_enumeration(&why), why);
  }

  TEST_CASE("compiled chain is valid and synchronised") {
    auto s = compile_scm(testing::chain_model());
    CHECK(check_axioms(s).ok());
    CHECK(check_cross_world(s).ok());
    CHECK(s.mechanism().size() == 16);
    CHECK(synchronized(s.measure(), CoordSet{0, 1}, CoordSet{2, 3}));
    auto t = unit::do_point(s, "CF.X", "1");
    CHECK(prob(t.measure(), unit::ev(t, {{"CF.Y", "1"}})) == q(2, 5));
  }

  TEST_CASE("cyclic model is rejected") {
    ScmModel m;
    m.exogenous = {{"U", {"lo", "hi"}}};
    m.noise = {q(1, 2), q(1, 2)};
    m.endogenous = {{"class", {"Y", "N"}}, {"exam", {"P", "F"}}};
    m.equations = {{"class", {"exam"}, {"U"}, {1, 0, 1, 1}}, {"exam", {"class"}, {"U"}, {1, 0, 1, 1}}};
    CHECK_THROWS_WITH_AS(compile_scm(m), doctest::Contains("cyclic"), CompileError);
  }

  TEST_CASE("malformed models") {
    auto m = testing::chain_model();
    m.noise[0] = q(2, 10);
    CHECK_THROWS_AS(compile_scm(m), CompileError);
    m = testing::chain_model();
    m.equations[1].table.pop_back();
    CHECK_THROWS_AS(compile_scm(m), CompileError);
    m = testing::chain_model();
    m.equations[1].parents = {"Z"};
    CHECK_THROWS_AS(compile_scm(m), CompileError);
  }

  TEST_CASE("full mechanism size limit") {
    auto m = copies(7);
    CHECK_THROWS_WITH_AS(compile_scm(m), doctest::Contains("list the kernels"), CompileError);
    ScmOptions opts;
    opts.kernels = std::vector<CoordSet>{CoordSet{}, CoordSet{7}};
    auto s = compile_scm(m, opts);
    CHECK(s.mechanism().size() == 2);
    CHECK(s.schema().outcome_count() == 16384);
  }

  TEST_CASE("diagonal backtracking coupling gives the standard measure") {
    auto m = testing::chain_model();
    std::vector<Rational> coupling(16, Rational(0));
    for (std::size_t u = 0; u < 4; ++u) coupling[u * 4 + u] = m.noise[u];
    auto back = compile_backtracking(m, m, coupling);
    CHECK(back.measure() == compile_scm(m).measure());
    CHECK(back.mechanism().size() == 1);
  }

  TEST_CASE("potential outcomes") {
    auto doc = parse_po(R"(
      model toy
      units { ann bob cat }
      prior { ann = 1/2  bob = 1/4  cat = 1/4 }
      endogenous { X { 0 1 } Y { 0 1 } }
      observed X { ann -> 1  bob -> 0  cat -> 1 }
      observed Y { ann -> 1  bob -> 0  cat -> 0 }
      potential Y do (X=0) { ann -> 0  bob -> 0  cat -> 0 }
      potential Y do (X=1) { ann -> 1  bob -> 1  cat -> 0 }
    )");
    auto c = compile_po(doc.model);
    CHECK(c.space.schema().worlds() == std::vector<std::string>{"W1", "W2", "OBS"});
    CHECK(c.assignments.size() == 2);
    const auto& p = c.space.measure();
    CHECK(prob(p, unit::ev(c.space, {{"W2.Y", "1"}})) == q(3, 4));
    CHECK(prob(p, unit::ev(c.space, {{"W1.Y", "1"}})) == 0);
    CHECK(prob(p, unit::ev(c.space, {{"OBS.X", "1"}, {"OBS.Y", "1"}})) == q(1, 2));
    CHECK(check_axioms(c.space).ok());
  }

  TEST_CASE("random models") {
    auto st = testing::compiler_suite(41, 30);
    INFO(st.summary());
    CHECK(st.ok());
  }
}
