#include "okh/saddle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "okh/error.hpp"
#include "okh/moves.hpp"

namespace okh {

std::string SaddleCoefficients::to_string() const {
  std::ostringstream os;
  os << "alpha=" << alpha << " beta=" << beta << " gamma=" << gamma << " a=" << a << " b=" << b
     << " c=" << c << " delta=" << delta << " e=" << e;
  return os.str();
}

IntMatrix merge_matrix(const SaddleCoefficients& k) {
  IntMatrix m(2, 4);
  m(1, 0) = k.delta;
  m(0, 1) = k.beta;
  m(0, 2) = k.alpha;
  m(1, 3) = k.gamma;
  return m;
}

IntMatrix split_matrix(const SaddleCoefficients& k) {
  IntMatrix m(4, 2);
  m(0, 0) = k.a;
  m(3, 0) = k.e;
  m(2, 1) = k.b;
  m(1, 1) = k.c;
  return m;
}

SaddleMaps saddle_maps(const SaddleCoefficients& k, Ring ring) {
  IntMatrix id = IntMatrix::identity(2);
  IntMatrix second_conj = tensor(id, conj_matrix());
  IntMatrix mu = merge_matrix(k), sigma = split_matrix(k);
  SaddleMaps m;
  m.ring = ring;
  m.zip_merge = -(mu * second_conj);
  m.zip_split = sigma;
  m.unzip_merge = mu;
  m.unzip_split = second_conj * sigma;
  return m;
}

namespace {

struct Dots {
  IntMatrix rho, first, second;
  explicit Dots(Ring r) : rho(dual_point_matrix(r)) {
    IntMatrix id = IntMatrix::identity(2);
    first = tensor(rho, id);
    second = tensor(id, rho);
  }
};

bool merge_dot_rules(const SaddleMaps& m, const Dots& d) {
  return m.zip_merge * d.first == d.rho * m.zip_merge &&
         m.zip_merge * d.second == -(d.rho * m.zip_merge) &&
         m.unzip_merge * d.first == d.rho * m.unzip_merge &&
         m.unzip_merge * d.second == d.rho * m.unzip_merge;
}

bool split_dot_rules(const SaddleMaps& m, const Dots& d) {
  return d.first * m.unzip_split == m.unzip_split * d.rho &&
         d.second * m.unzip_split == -(m.unzip_split * d.rho) &&
         d.first * m.zip_split == m.zip_split * d.rho &&
         d.second * m.zip_split == m.zip_split * d.rho;
}

bool bigon_rule(const SaddleMaps& m, const Dots& d) { return m.unzip_split * m.zip_merge == d.second - d.first; }

bool four_term_rule(const SaddleMaps& m, const Dots& d) {
  return m.zip_merge * m.unzip_split == d.rho.scaled(-2) && m.unzip_merge * m.zip_split == d.rho.scaled(2);
}

int read_sign(const LinkDiagram& d, const ResolvedGraph& g, ArcId a, std::uint64_t bit) {
  return (bit & static_cast<std::uint64_t>(g.parity[static_cast<std::size_t>(d.arc_index(a))])) ? -1 : 1;
}

int circle_at(const LinkDiagram& d, const ResolvedGraph& g, ArcId a) {
  return g.circle_of[static_cast<std::size_t>(d.arc_index(a))];
}

}  // namespace

LocalRelations check_local_relations(const SaddleMaps& m) {
  Dots d(m.ring);
  LocalRelations r;
  r.bigon = bigon_rule(m, d);
  r.four_term = four_term_rule(m, d);
  r.point_sign = merge_dot_rules(m, d) && split_dot_rules(m, d);
  return r;
}

IdempotentSplit idempotent_split(const SaddleMaps& m) {
  IntMatrix dot_first = tensor(point_matrix(m.ring), IntMatrix::identity(2));
  IdempotentSplit s;
  s.a1 = m.unzip_merge;
  s.b1 = dot_first * m.zip_split;
  s.a2 = m.zip_merge * dot_first;
  s.b2 = -m.unzip_split;
  s.e1 = s.b1 * s.a1;
  s.e2 = s.b2 * s.a2;
  return s;
}

void local_map_triplets(const LocalFrame& src, const LocalFrame& dst,
                        const std::vector<std::pair<int, int>>& carried, const IntMatrix& local,
                        std::size_t row_offset, std::size_t col_offset, std::int64_t scale,
                        std::vector<Triplet>& out) {
  std::vector<int> in_c, out_c;
  for (ArcId a : src.arcs) in_c.push_back(circle_at(*src.diagram, *src.graph, a));
  for (ArcId a : dst.arcs) out_c.push_back(circle_at(*dst.diagram, *dst.graph, a));
  if (in_c.size() == 2 && in_c[0] == in_c[1]) throw std::logic_error("local inputs share a circle");
  if (out_c.size() == 2 && out_c[0] == out_c[1]) throw std::logic_error("local outputs share a circle");

  std::uint64_t n0 = std::uint64_t{1} << src.graph->circle_count();
  for (std::uint64_t w = 0; w < n0; ++w) {
    std::uint64_t li = 0;
    std::int64_t s_in = scale;
    for (std::size_t k = 0; k < in_c.size(); ++k) {
      std::uint64_t bit = (w >> in_c[k]) & 1U;
      li |= bit << k;
      s_in *= read_sign(*src.diagram, *src.graph, src.arcs[k], bit);
    }
    std::uint64_t rest = 0;
    for (auto [from, to] : carried) rest |= ((w >> from) & 1U) << to;
    for (std::size_t lo = 0; lo < local.rows(); ++lo) {
      std::int64_t v = local(lo, li);
      if (v == 0) continue;
      std::uint64_t word = rest;
      std::int64_t s = s_in * v;
      for (std::size_t k = 0; k < out_c.size(); ++k) {
        std::uint64_t bit = (lo >> k) & 1U;
        word |= bit << out_c[k];
        s *= read_sign(*dst.diagram, *dst.graph, dst.arcs[k], bit);
      }
      out.push_back({row_offset + word, col_offset + w, s});
    }
  }
}

void saddle_triplets(const LinkDiagram& d, const EdgeTransition& t, const ResolvedGraph& g0,
                     const ResolvedGraph& g1, const SaddleMaps& m, std::size_t row_offset,
                     std::size_t col_offset, std::int64_t scale, std::vector<Triplet>& out) {
  const Crossing& x = d.crossing(t.crossing);
  StrandRoles r = strand_roles(x);
  auto arc = [&](int slot) { return x.ends[static_cast<std::size_t>(slot)]; };
  bool zip = x.sign() > 0;
  bool merge = t.kind == EdgeKind::Merge;
  LocalFrame src{&d, &g0, {}}, dst{&d, &g1, {}};
  const IntMatrix* local;
  if (zip && merge) {
    src.arcs = {arc(r.right_in), arc(r.left_in)};
    dst.arcs = {arc(r.right_in)};
    local = &m.zip_merge;
  } else if (zip) {
    src.arcs = {arc(r.right_in)};
    dst.arcs = {arc(r.right_in), arc(r.right_out)};
    local = &m.zip_split;
  } else if (merge) {
    src.arcs = {arc(r.right_in), arc(r.right_out)};
    dst.arcs = {arc(r.right_in)};
    local = &m.unzip_merge;
  } else {
    src.arcs = {arc(r.right_in)};
    dst.arcs = {arc(r.right_in), arc(r.left_in)};
    local = &m.unzip_split;
  }
  std::vector<std::pair<int, int>> carried;
  for (int i = 0; i < g0.circle_count(); ++i)
    if (t.circle_map[static_cast<std::size_t>(i)] >= 0) carried.push_back({i, t.circle_map[static_cast<std::size_t>(i)]});
  local_map_triplets(src, dst, carried, *local, row_offset, col_offset, scale, out);
}

SparseMatrix saddle_map(const LinkDiagram& d, const EdgeTransition& t, const ResolvedGraph& g0,
                        const ResolvedGraph& g1, const SaddleMaps& m) {
  std::vector<Triplet> trip;
  saddle_triplets(d, t, g0, g1, m, 0, 0, 1, trip);
  return SparseMatrix::from_triplets(module_rank(g1), module_rank(g0), std::move(trip));
}

int square_obstruction(int base, int first, int second, int both) {
  return first == base + 1 && second == base + 1 && both == base ? -1 : 1;
}

SquareStats untwisted_square_check(const LinkDiagram& d, const SaddleMaps& m) {
  SquareStats st;
  std::map<State, ResolvedGraph> cache;
  auto graph = [&](const State& s) -> const ResolvedGraph& {
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, resolve(d, s)).first;
    return it->second;
  };
  auto edge = [&](const State& s, int c) {
    State t = s;
    t.values[static_cast<std::size_t>(c)] += 1;
    const auto& g0 = graph(s);
    const auto& g1 = graph(t);
    return saddle_map(d, cube_edge(d, s, c, g0, g1), g0, g1, m);
  };
  for (const State& s : enumerate_states(d)) {
    for (int c1 = 0; c1 < d.size(); ++c1) {
      int hi1 = d.crossing(c1).sign() > 0 ? 1 : 0;
      if (s.values[static_cast<std::size_t>(c1)] >= hi1) continue;
      for (int c2 = c1 + 1; c2 < d.size(); ++c2) {
        int hi2 = d.crossing(c2).sign() > 0 ? 1 : 0;
        if (s.values[static_cast<std::size_t>(c2)] >= hi2) continue;
        State s1 = s, s2 = s;
        s1.values[static_cast<std::size_t>(c1)] += 1;
        s2.values[static_cast<std::size_t>(c2)] += 1;
        State s12 = s1;
        s12.values[static_cast<std::size_t>(c2)] += 1;
        ++st.squares;
        int sigma = square_obstruction(graph(s).circle_count(), graph(s1).circle_count(), graph(s2).circle_count(),
                                       graph(s12).circle_count());
        SparseMatrix p2 = edge(s2, c1) * edge(s, c2);
        if (!(edge(s1, c2) * edge(s, c1) == (sigma < 0 ? -p2 : p2))) ++st.failures;
      }
    }
  }
  return st;
}

std::vector<LinkDiagram> square_test_diagrams() {
  std::vector<LinkDiagram> out;
  std::set<std::string> seen;
  auto keep = [&](const LinkDiagram& d) {
    if (seen.insert(canonical_code(d)).second) out.push_back(d);
  };
  keep(parse_pd("X[4,1,3,2] X[2,3,1,4]"));
  keep(parse_pd("X[4,2,3,1] X[2,4,1,3]"));
  keep(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"));
  keep(parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"));
  keep(parse_pd("X[4,2,1,5] X[2,6,3,1] X[3,6,4,5]"));  // one circle split at two crossings
  LinkDiagram o = parse_pd("O");
  std::vector<LinkDiagram> curls;
  for (int sign : {1, -1})
    for (int side : {1, -1}) {
      MoveSpec mv;
      mv.arc = o.arcs()[0];
      mv.sign = sign;
      mv.side = side;
      curls.push_back(apply_move(o, mv));
    }
  for (const auto& c : curls) {
    keep(c);
    for (ArcId a : c.arcs())
      for (int sign : {1, -1})
        for (int side : {1, -1}) {
          MoveSpec mv;
          mv.arc = a;
          mv.sign = sign;
          mv.side = side;
          keep(apply_move(c, mv));
        }
  }
  return out;
}

std::vector<SaddleCoefficients> symmetry_orbit(const SaddleCoefficients& k) {
  SaddleCoefficients swapped = k;
  std::swap(swapped.alpha, swapped.beta);
  std::swap(swapped.b, swapped.c);
  auto neg = [](SaddleCoefficients s) {
    for (auto* p : {&s.alpha, &s.beta, &s.gamma, &s.a, &s.b, &s.c, &s.delta, &s.e}) *p = -*p;
    return s;
  };
  std::set<SaddleCoefficients> orbit{k, swapped, neg(k), neg(swapped)};
  return {orbit.begin(), orbit.end()};
}

SolverReport solve_saddle_coefficients(Ring ring, int range) {
  Dots dots(ring);
  auto tests = square_test_diagrams();
  for (int r = range; r <= 4; ++r) {
    SolverReport rep;
    rep.ring = ring;
    rep.range = r;
    bool lee = ring == Ring::Lee;
    std::vector<std::int64_t> vals;
    for (int v = -r; v <= r; ++v) vals.push_back(v);
    std::vector<std::int64_t> lower = lee ? vals : std::vector<std::int64_t>{0};

    // Dot rules involve only one of the two maps, so filter them separately.
    std::vector<SaddleCoefficients> merges, splits;
    for (auto al : vals)
      for (auto be : vals)
        for (auto ga : vals)
          for (auto de : lower) {
            SaddleCoefficients k;
            k.alpha = al, k.beta = be, k.gamma = ga, k.delta = de;
            if (merge_dot_rules(saddle_maps(k, ring), dots)) merges.push_back(k);
          }
    for (auto a : vals)
      for (auto b : vals)
        for (auto c : vals)
          for (auto e : lower) {
            SaddleCoefficients k;
            k.a = a, k.b = b, k.c = c, k.e = e;
            if (split_dot_rules(saddle_maps(k, ring), dots)) splits.push_back(k);
          }
    std::size_t per = vals.size() * vals.size() * vals.size() * lower.size();
    rep.examined = per * per;
    for (const auto& mk : merges)
      for (const auto& sk : splits) {
        SaddleCoefficients k = mk;
        k.a = sk.a, k.b = sk.b, k.c = sk.c, k.e = sk.e;
        SaddleMaps m = saddle_maps(k, ring);
        if (!bigon_rule(m, dots) || !four_term_rule(m, dots)) continue;
        bool ok = true;
        for (const auto& d : tests)
          if (untwisted_square_check(d, m).failures != 0) {
            ok = false;
            break;
          }
        if (ok) rep.solutions.push_back(k);
      }
    if (rep.solutions.empty()) continue;
    std::set<SaddleCoefficients> placed;
    for (const auto& s : rep.solutions) {
      if (placed.count(s)) continue;
      std::vector<SaddleCoefficients> cls;
      for (const auto& o : symmetry_orbit(s))
        if (std::find(rep.solutions.begin(), rep.solutions.end(), o) != rep.solutions.end()) {
          cls.push_back(o);
          placed.insert(o);
        }
      std::sort(cls.begin(), cls.end());
      rep.classes.push_back(cls);
    }
    rep.chosen = rep.classes.front().back();
    return rep;
  }
  throw SolverError("no saddle coefficients satisfy the local relations in range [-4, 4]");
}

const SolverReport& solved_saddles(Ring ring) {
  if (ring == Ring::Graded) {
    static const SolverReport graded = solve_saddle_coefficients(Ring::Graded);
    return graded;
  }
  static const SolverReport lee = solve_saddle_coefficients(Ring::Lee);
  return lee;
}

}  // namespace okh
