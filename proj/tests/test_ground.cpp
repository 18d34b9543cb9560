#include <doctest.h>

#include "quadpat/ground.hpp"

using quadpat::GroundSet;
using quadpat::IndexSet;
using quadpat::Rational;

TEST_SUITE("ground") {

TEST_CASE("interval enumeration and membership") {
  const GroundSet g = GroundSet::interval(3, 9);
  CHECK(g.size() == 7);
  CHECK(g.value_at(0) == Rational(3));
  CHECK(g.value_at(6) == Rational(9));
  CHECK(*g.index_of(Rational(5)) == 2);
  CHECK(!g.index_of(Rational(10)));
  CHECK(!g.index_of(Rational(7, 2)));
  CHECK(!g.closed_under_ops());
}

TEST_CASE("interval arithmetic drops out-of-range results") {
  const GroundSet g = GroundSet::interval(1, 10);
  CHECK(*g.add_idx(*g.index_of(3), *g.index_of(4)) == *g.index_of(7));
  CHECK(!g.add_idx(*g.index_of(6), *g.index_of(5)));  // 11 leaves [1,10]
  CHECK(*g.mul_idx(*g.index_of(2), *g.index_of(5)) == *g.index_of(10));
  CHECK(!g.mul_idx(*g.index_of(3), *g.index_of(4)));
  CHECK(!g.inv_idx(*g.index_of(2)));  // only field grounds invert
}

TEST_CASE("prime field tables") {
  const GroundSet g = GroundSet::prime_field(7);
  CHECK(g.size() == 7);
  CHECK(g.closed_under_ops());
  CHECK(g.value_at(0) == Rational(0));
  auto idx = [&](long long v) { return *g.index_of(Rational(v)); };
  CHECK(*g.add_idx(idx(3), idx(5)) == idx(1));   // 8 mod 7
  CHECK(*g.mul_idx(idx(3), idx(5)) == idx(1));   // 15 mod 7
  CHECK(*g.inv_idx(idx(3)) == idx(5));
  CHECK(!g.inv_idx(idx(0)));
  CHECK(*g.div_idx(idx(6), idx(4)) == idx(5));   // 6 * 4^-1 = 6*2 = 12 = 5
  CHECK(*g.zero_index() == idx(0));
  CHECK(*g.one_index() == idx(1));
}

TEST_CASE("prime field embeds rational constants mod p") {
  const GroundSet g = GroundSet::prime_field(7);
  CHECK(*g.embed_constant(Rational(1, 2)) == *g.index_of(Rational(4)));  // 2*4 = 1
  CHECK(*g.embed_constant(Rational(9)) == *g.index_of(Rational(2)));
  CHECK(*g.embed_constant(Rational(-1)) == *g.index_of(Rational(6)));
  CHECK(!g.embed_constant(Rational(1, 7)));  // p divides the denominator
  CHECK(*g.embed_constant(Rational(14, 3)) == *g.index_of(Rational(0)));
}

TEST_CASE("rational grid is ascending reduced fractions") {
  const GroundSet g = GroundSet::rational_grid(2, 2);
  // reduced a/b, |a| <= 2, 1 <= b <= 2: -2, -1, -1/2, 0, 1/2, 1, 2
  CHECK(g.size() == 7);
  CHECK(g.value_at(0) == Rational(-2));
  CHECK(g.value_at(2) == Rational(-1, 2));
  CHECK(g.value_at(3) == Rational(0));
  CHECK(g.value_at(6) == Rational(2));
  for (std::uint32_t i = 1; i < g.size(); ++i) CHECK(g.value_at(i - 1) < g.value_at(i));
  CHECK(!g.contains(Rational(3, 2)));  // numerator bound is on the reduced form
  CHECK(!g.contains(Rational(1, 3)));
  CHECK(*g.mul_idx(*g.index_of(Rational(1, 2)), *g.index_of(Rational(2))) ==
        *g.index_of(Rational(1)));
  CHECK(!g.add_idx(*g.index_of(Rational(2)), *g.index_of(Rational(1))));
  // membership, not reduction, decides embed_constant on exact grounds
  CHECK(*g.embed_constant(Rational(2, 4)) == *g.index_of(Rational(1, 2)));
  CHECK(!g.embed_constant(Rational(5, 2)));
}

TEST_CASE("parse grammar") {
  CHECK(GroundSet::parse("int:1..20") == GroundSet::interval(1, 20));
  CHECK(GroundSet::parse("int:-3..3") == GroundSet::interval(-3, 3));
  CHECK(GroundSet::parse("fp:11") == GroundSet::prime_field(11));
  CHECK(GroundSet::parse("qgrid:3/2") == GroundSet::rational_grid(3, 2));
  CHECK(!GroundSet::parse("int:5..1"));
  CHECK(!GroundSet::parse("fp:10"));   // not prime
  CHECK(!GroundSet::parse("fp:1"));
  CHECK(!GroundSet::parse("qgrid:0/2"));
  CHECK(!GroundSet::parse("grid:1/1"));
  CHECK(!GroundSet::parse("int:1.20"));
  CHECK(!GroundSet::parse(""));
}

TEST_CASE("describe names the ground") {
  CHECK(GroundSet::interval(1, 20).describe() == "int:1..20");
  CHECK(GroundSet::prime_field(7).describe() == "fp:7");
  CHECK(GroundSet::rational_grid(3, 2).describe() == "qgrid:3/2");
}

TEST_CASE("index-set helpers") {
  const GroundSet g = GroundSet::prime_field(5);
  CHECK(quadpat::full_set(g).count() == 5);
  const IndexSet nz = quadpat::nonzero_set(g);
  CHECK(nz.count() == 4);
  CHECK(!nz.test(*g.zero_index()));
  // 2 * {1,2,3,4} = {2,4,1,3}: a bijection of the nonzero residues
  const IndexSet scaled = quadpat::scale_set(g, *g.index_of(Rational(2)), nz);
  CHECK(scaled.count() == 4);
  CHECK(!scaled.test(*g.zero_index()));

  const GroundSet h = GroundSet::interval(1, 6);
  IndexSet s(h.size());
  s.set(*h.index_of(Rational(2)));
  s.set(*h.index_of(Rational(3)));
  // 2 * {2,3} = {4,6}, both inside [1,6]
  const IndexSet t = quadpat::scale_set(h, *h.index_of(Rational(2)), s);
  CHECK(t.count() == 2);
  CHECK(t.test(*h.index_of(Rational(4))));
  CHECK(t.test(*h.index_of(Rational(6))));
  // 3 * {2,3} = {6,9}; 9 drops out
  const IndexSet u = quadpat::scale_set(h, *h.index_of(Rational(3)), s);
  CHECK(u.count() == 1);
  CHECK(u.test(*h.index_of(Rational(6))));
}

TEST_CASE("interval without 1 has no one_index") {
  const GroundSet g = GroundSet::interval(2, 5);
  CHECK(!g.one_index());
  CHECK(!g.zero_index());
}

}  // TEST_SUITE
