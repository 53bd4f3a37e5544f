// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "okh/algebra.hpp"
#include "okh/bracket.hpp"
#include "okh/complex.hpp"
#include "okh/homology.hpp"
#include "okh/moves.hpp"
#include "okh/saddle.hpp"
#include "okh/snf.hpp"
#include "okh/verify.hpp"
#include "oracles.hpp"

using namespace okh;

namespace {

constexpr double kCorpusSeconds = 60.0;
constexpr int kSkeinTriples = 60;
constexpr int kMoveVariants = 3;
constexpr int kRandomMatrices = 500;

std::vector<CorpusEntry> corpus() {
  auto all = load_corpus(std::string(OKH_SOURCE_DIR) + "/corpus/knots.json");
  for (auto& e : load_corpus(std::string(OKH_SOURCE_DIR) + "/corpus/generated.json")) all.push_back(std::move(e));
  return all;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Criterion = std::function<void(Outcome&)>;

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

void d_squared(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t complexes = 0;
  for (const auto& e : corpus())
    for (Ring r : {Ring::Graded, Ring::Lee}) {
      ++complexes;
      if (!verify_d_squared(build_complex(e.diagram, r)).ok) fail(o, e.name + " " + ring_name(r));
    }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s >= kCorpusSeconds) fail(o, "took " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(complexes) + " complexes in " + std::to_string(s) + " s";
}

void euler(Outcome& o) {
  std::size_t n = 0;
  for (const auto& e : corpus()) {
    ChainComplex K = build_complex(e.diagram, Ring::Graded);
    LaurentPoly b = bracket_state_sum(e.diagram);
    if (graded_euler_characteristic(K) != b || graded_euler_characteristic(homology(K)) != b) fail(o, e.name);
    ++n;
  }
  if (o.pass) o.detail = std::to_string(n) + " diagrams";
}

void bracket_oracle(Outcome& o) {
  for (const auto& e : corpus())
    if (jones_via_kauffman(e.diagram) != bracket_state_sum(e.diagram)) fail(o, "kauffman differs on " + e.name);
  std::mt19937_64 rng(7);
  auto bases = corpus();
  int triples = 0;
  while (triples < kSkeinTriples) {
    const auto& base = bases[rng() % bases.size()].diagram;
    LinkDiagram d = random_moves(base, 4, rng, 8);
    if (d.size() == 0 || d.size() > 8) continue;
    SkeinTriple t = skein_triple(d, static_cast<int>(rng() % static_cast<std::uint64_t>(d.size())));
    if (!verify_skein(t.plus, t.minus, t.zero)) fail(o, "skein fails on a triple from " + serialize_pd(base));
    ++triples;
  }
  if (o.pass) o.detail = std::to_string(bases.size()) + " diagrams, " + std::to_string(triples) + " skein triples";
}

void reidemeister(Outcome& o) {
  std::mt19937_64 rng(11);
  std::size_t n = 0;
  for (const auto& e : corpus()) {
    BigradedHomology H = khovanov_homology(e.diagram);
    for (int v = 0; v < kMoveVariants; ++v) {
      LinkDiagram d = random_moves(e.diagram, 6, rng, std::max(10, e.diagram.size()));
      if (khovanov_homology(d) != H) fail(o, e.name + " variant " + std::to_string(v));
      ++n;
    }
  }
  if (o.pass) o.detail = std::to_string(n) + " move-related diagrams";
}

void lee_rank(Outcome& o) {
  for (const auto& e : corpus()) {
    ChainComplex K = build_complex(e.diagram, Ring::Lee);
    BigradedHomology L = homology(K);
    std::size_t expect = std::size_t{1} << e.diagram.component_count();
    CanonicalReport c = lee_canonical_classes(e.diagram, &K);
    if (L.total_free() != expect || L.has_torsion()) fail(o, e.name + " rank " + std::to_string(L.total_free()));
    if (c.classes.size() != expect || !c.all_cycles || !c.independent) fail(o, e.name + " canonical classes");
  }
}

LinkDiagram add_curl(const LinkDiagram& d, int sign, int side) {
  MoveSpec mv;
  mv.arc = d.arcs().front();
  mv.sign = sign;
  mv.side = side;
  return apply_move(d, mv);
}

void r1(Outcome& o) {
  std::size_t n = 0;
  for (const auto& e : load_corpus(std::string(OKH_SOURCE_DIR) + "/corpus/knots.json")) {
    if (e.diagram.size() > 5) continue;
    for (int sign : {1, -1})
      for (int side : {1, -1}) {
        LinkDiagram c = add_curl(e.diagram, sign, side);
        R1Identities ids = check_r1_identities(r1_chain_maps(c, c.size() - 1));
        if (!ids.all()) fail(o, e.name + ": " + ids.to_string());
        ++n;
      }
  }
  if (o.pass) o.detail = std::to_string(n) + " curls";
}

void solver(Outcome& o) {
  for (Ring r : {Ring::Graded, Ring::Lee}) {
    const SolverReport& rep = solved_saddles(r);
    if (rep.classes.size() != 1) fail(o, ring_name(r) + ": " + std::to_string(rep.classes.size()) + " classes");
    const SaddleMaps& m = default_saddle_maps(r);
    if (!check_local_relations(m).all()) fail(o, ring_name(r) + " local relations");
    for (const auto& d : square_test_diagrams())
      if (untwisted_square_check(d, m).failures) fail(o, ring_name(r) + " untwisted squares");
  }
  std::size_t squares = 0;
  for (const auto& e : corpus())
    for (Ring r : {Ring::Graded, Ring::Lee}) {
      SquareReport sq = square_report(build_complex(e.diagram, r));
      squares += sq.squares;
      if (sq.twisted_failures) fail(o, e.name + " twisted squares");
    }
  if (o.pass) o.detail = std::to_string(squares) + " twisted squares anticommute";
}

BigMatrix to_big(const oracle::Dense& m) {
  BigMatrix b(m.size(), m[0].size());
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) b(i, j) = m[i][j];
  return b;
}

oracle::Dense to_dense(const BigMatrix& b) {
  oracle::Dense m(b.rows, std::vector<oracle::Big>(b.cols));
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) m[i][j] = b(i, j);
  return m;
}

void snf(Outcome& o) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < kRandomMatrices; ++i) {
    auto m = oracle::random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, i % 3 == 0 ? 20 : 4);
    SNFResult r = smith_normal_form(to_big(m), true);
    if (r.factors != oracle::naive_snf(m).factors) fail(o, "factors differ on matrix " + std::to_string(i));
    if (r.factors != oracle::determinantal_factors(m)) fail(o, "determinantal factors differ on " + std::to_string(i));
    if (!r.U || !r.V || abs(oracle::det(to_dense(*r.U))) != 1 || abs(oracle::det(to_dense(*r.V))) != 1) {
      fail(o, "transform not unimodular on " + std::to_string(i));
      continue;
    }
    BigMatrix d = *r.U * to_big(m) * *r.V;
    for (std::size_t a = 0; a < d.rows; ++a)
      for (std::size_t b = 0; b < d.cols; ++b)
        if (d(a, b) != (a == b && a < r.factors.size() ? r.factors[a] : BigInt(0))) fail(o, "U M V not diagonal");
  }
}

IntMatrix swap4() {
  IntMatrix s(4, 4);
  s(0, 0) = s(3, 3) = 1;
  s(1, 2) = s(2, 1) = 1;
  return s;
}

std::int64_t det2(const IntMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

void local_relations(Outcome& o) {
  IntMatrix I2 = IntMatrix::identity(2);
  for (Ring r : {Ring::Graded, Ring::Lee}) {
    std::string n = ring_name(r) + " ";
    IntMatrix m = mult_matrix(r), d = comult_matrix(r), e = counit_matrix(r), u = unit_matrix(r), c = conj_matrix();
    if (surgery_matrix(r) != I2) fail(o, n + "surgery");
    bool frob = m * tensor(m, I2) == m * tensor(I2, m) && m * swap4() == m && m * tensor(u, I2) == I2 &&
                tensor(d, I2) * d == tensor(I2, d) * d && swap4() * d == d && tensor(e, I2) * d == I2 &&
                d * m == tensor(m, I2) * tensor(I2, d) && d * m == tensor(I2, m) * tensor(d, I2);
    if (!frob) fail(o, n + "Frobenius axioms");
    if (c * c != I2 || mult_matrix(r) * tensor(c, c) != c * mult_matrix(r)) fail(o, n + "conjugation");
    if (std::abs(det2(pairing_matrix(r))) != 1) fail(o, n + "pairing");
  }
  IdempotentSplit s = idempotent_split(default_saddle_maps(Ring::Graded));
  bool idem = s.e1 * s.e1 == s.e1 && s.e2 * s.e2 == s.e2 && (s.e1 * s.e2).is_zero() && (s.e2 * s.e1).is_zero() &&
              s.e1 + s.e2 == IntMatrix::identity(4) && s.a1 * s.b1 == I2 && s.a2 * s.b2 == I2;
  if (!idem) fail(o, "orthogonal idempotents");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"d^2 = 0 on the corpus, both rings", d_squared},
      {"Euler characteristic = bracket", euler},
      {"bracket = Kauffman oracle, skein triples", bracket_oracle},
      {"Reidemeister invariance of homology tables", reidemeister},
      {"Lee homology free of rank 2^m, canonical classes", lee_rank},
      {"R1 chain identities", r1},
      {"saddle solver uniqueness, twisted squares anticommute", solver},
      {"Smith normal form against oracles, unimodular transforms", snf},
      {"local relations of the algebra", local_relations},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& ex) {
      fail(o, std::string("exception: ") + ex.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << ' ' << criteria[i].first
              << (o.detail.empty() ? "" : " (" + o.detail + ")") << std::endl;
  }
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
