#include <doctest.h>

#include "okh/complex.hpp"
#include "okh/error.hpp"
#include "okh/homology.hpp"
#include "support.hpp"

using namespace okh;

namespace {

LinkDiagram curl(int sign, int side = 1) {
  LinkDiagram o = parse_pd("O");
  MoveSpec mv;
  mv.arc = o.arcs().front();
  mv.sign = sign;
  mv.side = side;
  return apply_move(o, mv);
}

// Adds a curl of the given sign on the first arc; the new crossing is last.
LinkDiagram with_curl(const LinkDiagram& d, int sign, int side) {
  MoveSpec mv;
  mv.arc = d.arcs().front();
  mv.sign = sign;
  mv.side = side;
  return apply_move(d, mv);
}

std::vector<int> subset(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; i < 8; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("twist signs: worked examples") {
  CHECK(twist_sign({}, 0, true).sign == 1);
  CHECK(twist_sign({}, 0, true).basis == std::vector<int>{0});
  // {c2} wedge c1, c1 < c2
  CHECK(twist_sign({2}, 1, true).sign == -1);
  CHECK(twist_sign({2}, 1, true).basis == std::vector<int>{1, 2});
  // contraction on the right: c2 is already rightmost in {c1, c2}
  CHECK(twist_sign({1, 2}, 2, false).sign == 1);
  CHECK(twist_sign({1, 2}, 1, false).sign == -1);
  CHECK(twist_sign({1, 2}, 1, false).basis == std::vector<int>{2});
  CHECK(twist_sign({1}, 1, true).sign == 0);
  CHECK(twist_sign({1}, 2, false).sign == 0);
}

TEST_CASE("property: twist signs match the exterior algebra") {
  for (unsigned mask = 0; mask < 256; ++mask)
    for (int c = 0; c < 8; ++c) {
      auto basis = subset(mask);
      CHECK(twist_sign(basis, c, true).sign == oracle::wedge_sign(basis, c));
      CHECK(twist_sign(basis, c, false).sign == oracle::contract_sign(basis, c));
    }
}

TEST_CASE("complex shapes of small diagrams") {
  ChainComplex u = build_complex(parse_pd("O"), Ring::Graded);
  CHECK(u.groups.size() == 1);
  CHECK(u.rank(0) == 2);
  CHECK(u.groups.at(0).front().q_shift == 0);
  CHECK(u.differential.empty());

  ChainComplex p = build_complex(curl(1), Ring::Graded);
  CHECK(p.min_height() == 0);
  CHECK(p.max_height() == 1);
  CHECK(p.rank(0) == 4);
  CHECK(p.rank(1) == 2);
  CHECK(p.groups.at(0).front().q_shift == -1);
  CHECK(p.groups.at(1).front().q_shift == -2);
  CHECK(p.groups.at(0).front().circles() == 2);
  CHECK(p.groups.at(1).front().graph.double_edges.size() == 1);

  ChainComplex n = build_complex(curl(-1), Ring::Graded);
  CHECK(n.min_height() == -1);
  CHECK(n.max_height() == 0);
  CHECK(n.groups.at(-1).front().q_shift == 2);
  CHECK(n.groups.at(0).front().q_shift == 1);
}

TEST_CASE("positive curl edge: merge, kills 1(x)1") {
  ChainComplex p = build_complex(curl(1), Ring::Graded);
  SparseMatrix d0 = p.d(0);
  CHECK(d0.rows() == 2);
  CHECK(d0.cols() == 4);
  CHECK(d0.at(0, 0) == 0);
  CHECK(d0.at(1, 0) == 0);
  CHECK(cube_edge(curl(1), State{{0}}, 0).kind == EdgeKind::Merge);
}

TEST_CASE("Hopf link edges") {
  LinkDiagram h = testing::knot("hopf-positive");
  CHECK(cube_edge(h, State{{0, 0}}, 0).kind == EdgeKind::Merge);
  CHECK(cube_edge(h, State{{1, 0}}, 1).kind == EdgeKind::Split);
  auto heights = std::vector<int>{};
  for (const auto& s : enumerate_states(h)) heights.push_back(s.height());
  CHECK(heights == std::vector<int>{0, 1, 1, 2});
}

TEST_CASE("property: d^2 = 0 and squares anticommute on random diagrams") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    LinkDiagram d = testing::random_diagram(rng, 7, 6);
    for (Ring r : {Ring::Graded, Ring::Lee}) {
      ChainComplex K = build_complex(d, r);
      CHECK(verify_d_squared(K).ok);
      SquareReport sq = square_report(K);
      CHECK(sq.twisted_failures == 0);
      CHECK(sq.untwisted_failures == 0);
      if (r == Ring::Graded) CHECK(q_homogeneous(K));
    }
  }
}

TEST_CASE("cube signs are trivial on the first crossing and squares close up") {
  LinkDiagram d = parse_pd("X[4,2,1,5] X[2,6,3,1] X[3,6,4,5]");
  ChainComplex K = build_complex(d, Ring::Graded);
  bool some_negative = false;
  for (const auto& [h, g] : K.groups)
    for (const Summand& s : g) {
      REQUIRE(s.cube_sign.size() == 3u);
      for (int c = 0; c < 3; ++c) {
        bool raisable = s.state.values[static_cast<std::size_t>(c)] < (d.crossing(c).sign() > 0 ? 1 : 0);
        CHECK((s.cube_sign[static_cast<std::size_t>(c)] != 0) == raisable);
        some_negative = some_negative || s.cube_sign[static_cast<std::size_t>(c)] < 0;
      }
      if (!s.cube_sign.empty() && s.cube_sign[0] != 0) CHECK(s.cube_sign[0] == 1);
    }
  CHECK(some_negative);
  CHECK(verify_d_squared(K).ok);
}

TEST_CASE("a corrupted edge is caught") {
  LinkDiagram t = testing::knot("trefoil-positive");
  BuildOptions o;
  o.fault = FaultInjection{State{{0, 1, 0}}, 0};
  for (Ring r : {Ring::Graded, Ring::Lee}) {
    DSquaredReport rep = verify_d_squared(build_complex(t, r, o));
    CHECK_FALSE(rep.ok);
    CHECK(rep.nonzero_entries > 0);
    CHECK_FALSE(rep.faults.empty());
  }
  o.fault = FaultInjection{State{{1, 1, 1}}, 0};
  CHECK_THROWS_AS(build_complex(t, Ring::Graded, o), ValidationError);
}

TEST_CASE("jobs do not change the complex") {
  LinkDiagram d = testing::knot("6_1");
  BuildOptions serial, parallel;
  serial.jobs = 1;
  parallel.jobs = 4;
  ChainComplex a = build_complex(d, Ring::Graded, serial), b = build_complex(d, Ring::Graded, parallel);
  CHECK(complex_to_json(a) == complex_to_json(b));
}

TEST_CASE("R1 identities: bare curls, both signs and sides") {
  for (int sign : {1, -1})
    for (int side : {1, -1}) {
      CAPTURE(sign);
      CAPTURE(side);
      LinkDiagram c = curl(sign, side);
      R1Maps M = r1_chain_maps(c, 0);
      R1Identities id = check_r1_identities(M);
      CHECK(id.all());
      CHECK(M.reduced.total_rank() == 2);
      if (sign > 0) {
        // f g = Id on the rank-2 reduced complex, delta D = Id at height 1
        CHECK(M.f.at(0) * M.g.at(0) == SparseMatrix::identity(2));
        CHECK(partial_differential(M.curl, 0, 0) * M.homotopy.at(1) == SparseMatrix::identity(2));
      }
    }
}

TEST_CASE("property: R1 identities on curls added to corpus diagrams") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 12; ++i) {
    LinkDiagram d = testing::random_diagram(rng, 5, 4);
    for (int sign : {1, -1})
      for (int side : {1, -1}) {
        LinkDiagram c = with_curl(d, sign, side);
        R1Maps M = r1_chain_maps(c, c.size() - 1);
        CHECK(check_r1_identities(M).all());
      }
  }
}

TEST_CASE("R1 maps on a curl that is not the last crossing") {
  LinkDiagram t = testing::knot("trefoil-positive");
  LinkDiagram c = with_curl(t, -1, 1);
  std::vector<Crossing> cs = c.crossings();
  std::rotate(cs.rbegin(), cs.rbegin() + 1, cs.rend());
  LinkDiagram first(cs, c.loops());
  REQUIRE(curl_at(first, 0).has_value());
  R1Maps M = r1_chain_maps(first, 0);
  CHECK(check_r1_identities(M).all());
  CHECK(M.curl.diagram.size() == 4);
  CHECK(curl_at(M.curl.diagram, 3).has_value());
}

TEST_CASE("R1 identity checker rejects wrong coefficients") {
  LinkDiagram c = curl(1);
  R1Coefficients k;
  k.f = {1, 0, 1};
  k.g = {1, 1, 1};
  k.homotopy = {0, 0, 0};
  CHECK_FALSE(check_r1_identities(build_r1_maps(c, 0, k)).all());
  CHECK_THROWS_AS(r1_chain_maps(testing::knot("trefoil-positive"), 0), ValidationError);
}

TEST_CASE("curl homology equals unknot homology") {
  BigradedHomology u = khovanov_homology(parse_pd("O"));
  for (int sign : {1, -1}) CHECK(khovanov_homology(curl(sign)) == u);
}

TEST_CASE("dump formats") {
  ChainComplex K = build_complex(curl(1), Ring::Graded);
  auto j = complex_to_json(K);
  CHECK(j["ring"] == "graded");
  CHECK(j["summands"].size() == 2);
  CHECK(j["summands"][0]["cube_sign"] == nlohmann::json::array({1}));
  CHECK(j["differentials"][0]["rows"] == 2);
  std::string text = complex_to_text(K);
  CHECK(text.find("height 0 rank 4") != std::string::npos);
  CHECK(text.find("d 0 2x4") != std::string::npos);
}
