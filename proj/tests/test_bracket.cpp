#include <doctest.h>

#include "okh/bracket.hpp"
#include "okh/error.hpp"
#include "support.hpp"

using namespace okh;

namespace {

LaurentPoly from_map(const std::map<int, std::int64_t>& m) {
  LaurentPoly p;
  for (auto [k, c] : m) p += LaurentPoly::monomial(c, k);
  return p;
}

}  // namespace

TEST_CASE("laurent polynomial text and arithmetic") {
  CHECK(loop_value().to_string() == "q^1 + q^-1");
  CHECK((LaurentPoly::q(3) * 2 - LaurentPoly::q(1)).to_string() == "2*q^3 - q^1");
  CHECK(LaurentPoly::constant(1).to_string() == "1");
  CHECK(LaurentPoly().to_string() == "0");
  CHECK(loop_value().pow(2) == LaurentPoly::q(2) + LaurentPoly::constant(2) + LaurentPoly::q(-2));
  CHECK((LaurentPoly::q(3) - LaurentPoly::q(-1)).inverted() == LaurentPoly::q(-3) - LaurentPoly::q(1));
  CHECK(LaurentPoly::q(3).negated_variable() == -LaurentPoly::q(3));
  CHECK(loop_value().evaluate_at_one() == 2);
}

TEST_CASE("worked examples") {
  CHECK(bracket_state_sum(LinkDiagram{}) == LaurentPoly::constant(1));
  CHECK(bracket_state_sum(parse_pd("O")) == loop_value());
  CHECK(bracket_state_sum(parse_pd("X[1,1,2,2]")) == loop_value());
  CHECK(bracket_state_sum(testing::knot("hopf-positive")).to_string() == "1 + q^-2 + q^-4 + q^-6");
  LaurentPoly r = bracket_state_sum(testing::knot("trefoil-positive"));
  LaurentPoly l = bracket_state_sum(testing::knot("trefoil-negative"));
  CHECK(r != l);
  CHECK(r.inverted() == l);
  CHECK(l.to_string() == "-q^9 + q^5 + q^3 + q^1");
}

TEST_CASE("bracket equals the Kauffman oracle and the classical state sum") {
  for (const auto& e : testing::full_corpus()) {
    CAPTURE(e.name);
    LaurentPoly b = bracket_state_sum(e.diagram);
    CHECK(jones_via_kauffman(e.diagram) == b);
    auto classical = oracle::classical_jones(testing::to_oracle(e.diagram), static_cast<int>(e.diagram.loops().size()));
    CHECK(from_map(classical).inverted() == b);
  }
}

TEST_CASE("property: invariance under random moves") {
  std::mt19937_64 rng(61);
  for (const auto& e : testing::knots()) {
    LaurentPoly b = bracket_state_sum(e.diagram);
    for (int i = 0; i < 3; ++i) CHECK(bracket_state_sum(random_moves(e.diagram, 6, rng, 9)) == b);
  }
}

TEST_CASE("multiplicative under disjoint union, reversed by mirror") {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 30; ++i) {
    LinkDiagram a = testing::random_diagram(rng, 5), b = testing::random_diagram(rng, 5);
    CHECK(bracket_state_sum(disjoint_union(a, b)) == bracket_state_sum(a) * bracket_state_sum(b));
    CHECK(bracket_state_sum(mirror(a)) == bracket_state_sum(a).inverted());
  }
}

TEST_CASE("skein relation: worked triples") {
  // curls: the oriented smoothing of a curl is a two-component unlink
  LinkDiagram o = parse_pd("O");
  MoveSpec mv;
  mv.arc = o.arcs().front();
  LinkDiagram plus = apply_move(o, mv);
  SkeinTriple t = skein_triple(plus, 0);
  CHECK(t.minus.writhe() == -1);
  CHECK(t.zero.component_count() == 2);
  CHECK(verify_skein(t.plus, t.minus, t.zero));
  CHECK_THROWS_AS(verify_skein(t.plus, t.minus, o), SiteMismatch);

  // trefoil: changing a crossing unknots it, smoothing gives a Hopf link
  SkeinTriple tr = skein_triple(testing::knot("trefoil-positive"), 0);
  CHECK(bracket_state_sum(tr.minus) == loop_value());
  CHECK(tr.zero.component_count() == 2);
  CHECK(bracket_state_sum(tr.zero) == bracket_state_sum(testing::knot("hopf-positive")));
  CHECK(verify_skein(tr.plus, tr.minus, tr.zero));
}

TEST_CASE("property: skein relation on 60 generated triples") {
  std::mt19937_64 rng(63);
  int triples = 0;
  while (triples < 60) {
    LinkDiagram d = testing::random_diagram(rng, 6);
    if (d.size() == 0) continue;
    int c = static_cast<int>(rng() % static_cast<std::uint64_t>(d.size()));
    SkeinTriple t = skein_triple(d, c);
    CHECK(verify_skein(t.plus, t.minus, t.zero));
    ++triples;
  }
  CHECK(triples == 60);
}

TEST_CASE("jobs do not change the state sum") {
  LinkDiagram d = testing::knot("6_1");
  CHECK(bracket_state_sum(d, 1) == bracket_state_sum(d, 4));
}
