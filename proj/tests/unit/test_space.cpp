#include "cfs/error.hpp"
#include "helpers.hpp"

using namespace cfs;

TEST_SUITE("space") {
  TEST_CASE("mixed radix with the first coordinate most significant") {
    auto s = make_schema({{"F", "a", {"0", "1"}}, {"F", "b", {"x", "y", "z"}}, {"CF", "a", {"0", "1"}}});
    CHECK(s->outcome_count() == 12);
    CHECK(s->worlds() == std::vector<std::string>{"F", "CF"});
    std::vector<std::size_t> labels{1, 2, 0};
    auto o = s->encode(labels);
    CHECK(o == 1 * 6 + 2 * 2 + 0);
    CHECK(s->decode(o).values == labels);
    CHECK(s->describe_outcome(o) == "(F.a=1, F.b=z, CF.a=0)");
    CHECK(s->describe(CoordSet{0, 2}) == "{F.a, CF.a}");
    CHECK(s->require("CF.a") == 2);
    CHECK_THROWS_AS(s->require("CF.b"), SchemaError);
    CHECK_THROWS_AS(s->require_label(1, "w"), SchemaError);
  }

  TEST_CASE("projection composes") {
    auto s = make_schema({{"W", "a", {"0", "1"}}, {"W", "b", {"0", "1", "2"}}, {"W", "c", {"0", "1"}}});
    for (auto big : {CoordSet{0, 1, 2}, CoordSet{0, 1}, CoordSet{1, 2}}) {
      for (std::uint64_t bits = 0; bits < 8; ++bits) {
        auto small = CoordSet::from_bits(bits);
        if (!small.subset_of(big)) continue;
        for (std::size_t o = 0; o < s->outcome_count(); ++o) {
          CHECK(s->restrict_partial(big, s->project(o, big), small) == s->project(o, small));
        }
      }
    }
  }

  TEST_CASE("cylinders intersect as joined assignments") {
    auto s = unit::binary_schema(3);
    auto a = cylinder(s, Assignment{{0, 1}});
    auto b = cylinder(s, Assignment{{1, 0}});
    CHECK((a & b) == cylinder(s, Assignment{{0, 1}, {1, 0}}));
    auto c = cylinder(s, Assignment{{0, 0}, {2, 1}});
    CHECK((a & c).empty());
    CHECK(cylinder(s, Assignment{}).is_all());
  }

  TEST_CASE("measurability is union of atoms, checked on every event of 2x2x2") {
    auto s = unit::binary_schema(3);
    for (std::uint64_t sb = 0; sb < 8; ++sb) {
      auto sset = CoordSet::from_bits(sb);
      auto atoms = atoms_of(s, sset).blocks();
      // Unions of atoms.
      std::vector<std::vector<bool>> unions;
      for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << atoms.size()); ++pick) {
        std::vector<bool> bits(8, false);
        for (std::size_t i = 0; i < atoms.size(); ++i) {
          if ((pick >> i) & 1u) {
            for (auto o : atoms[i].outcomes()) bits[o] = true;
          }
        }
        unions.push_back(bits);
      }
      for (std::uint32_t e = 0; e < 256; ++e) {
        std::vector<bool> bits(8);
        for (std::size_t o = 0; o < 8; ++o) bits[o] = (e >> o) & 1u;
        bool is_union = std::find(unions.begin(), unions.end(), bits) != unions.end();
        CHECK(is_measurable_wrt(Event(s, bits), sset) == is_union);
      }
    }
  }

  TEST_CASE("H_empty holds only the empty event and Omega") {
    auto s = unit::binary_schema(2);
    std::size_t measurable = 0;
    for (std::uint32_t e = 0; e < 16; ++e) {
      std::vector<bool> bits(4);
      for (std::size_t o = 0; o < 4; ++o) bits[o] = (e >> o) & 1u;
      Event ev(s, bits);
      if (is_measurable_wrt(ev, CoordSet{})) {
        ++measurable;
        CHECK((ev.empty() || ev.is_all()));
      }
    }
    CHECK(measurable == 2);
  }

  TEST_CASE("schemas above 2^20 outcomes are rejected") {
    CHECK_THROWS_AS(unit::binary_schema(21), SchemaError);
    CHECK_NOTHROW(unit::binary_schema(20));
  }

  TEST_CASE("partitions from blocks") {
    auto s = unit::binary_schema(2);
    auto a = cylinder(s, Assignment{{0, 0}});
    auto p = Partition::from_blocks(s, {a, ~a});
    CHECK(p.block_count() == 2);
    CHECK_THROWS_AS(Partition::from_blocks(s, {a, Event::all(s)}), SchemaError);
    CHECK_THROWS_AS(Partition::from_blocks(s, {a}), SchemaError);
  }

  TEST_CASE("restrict keeps worlds that still have coordinates") {
    auto s = make_schema({{"F", "a", {"0", "1"}}, {"CF", "a", {"0", "1"}}, {"CF", "b", {"0", "1"}}});
    auto r = s->restrict(CoordSet{1, 2});
    CHECK(r.worlds() == std::vector<std::string>{"CF"});
    CHECK(r.coord_count() == 2);
  }
}
