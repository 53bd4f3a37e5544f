#include "okh/complex.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "okh/error.hpp"
#include "okh/parallel.hpp"

namespace okh {

namespace {

int upper_value(const LinkDiagram& d, int c) { return d.crossing(c).sign() > 0 ? 1 : 0; }

bool eligible(const LinkDiagram& d, const State& s, int c) {
  return s.values[static_cast<std::size_t>(c)] < upper_value(d, c);
}

State raised(const State& s, int c) {
  State t = s;
  t.values[static_cast<std::size_t>(c)] += 1;
  return t;
}

SparseMatrix negated_if(const SparseMatrix& m, int sign) { return sign < 0 ? -m : m; }

SparseMatrix linear(const std::array<SparseMatrix, 3>& parts, const std::array<std::int64_t, 3>& c) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < 3; ++i) {
    if (c[i] == 0) continue;
    for (auto e : parts[i].triplets()) t.push_back({e.row, e.col, e.value * c[i]});
  }
  return SparseMatrix::from_triplets(parts[0].rows(), parts[0].cols(), std::move(t));
}

// Triplets of every edge leaving summand `src` (optionally only at one crossing).
void edge_triplets(const ChainComplex& K, const Summand& src, int only, std::vector<Triplet>& out) {
  const LinkDiagram& d = K.diagram;
  for (int c = 0; c < d.size(); ++c) {
    if (only >= 0 && c != only) continue;
    if (!eligible(d, src.state, c)) continue;
    const Summand& dst = K.summand(raised(src.state, c));
    int sign = twist_sign(src, d, c).sign * src.cube_sign[static_cast<std::size_t>(c)];
    if (K.fault && K.fault->state == src.state && K.fault->crossing == c) sign = -sign;
    EdgeTransition t = cube_edge(d, src.state, c, src.graph, dst.graph);
    saddle_triplets(d, t, src.graph, dst.graph, K.saddles, dst.offset, src.offset, sign, out);
  }
}

int lowest_value(const LinkDiagram& d, int c) { return d.crossing(c).sign() > 0 ? 0 : -1; }

// Saddle composites around a square whose two first steps split the same
// circle anticommute; every other square commutes. Integrating that obstruction
// along the crossing order gives edge signs under which all squares commute.
void assign_cube_signs(ChainComplex& K) {
  const LinkDiagram& d = K.diagram;
  auto circles = [&](const State& s) { return K.summand(s).circles(); };
  for (auto& [h, group] : K.groups)
    for (Summand& S : group) {
      S.cube_sign.assign(static_cast<std::size_t>(d.size()), 0);
      for (int c = 0; c < d.size(); ++c) {
        if (!eligible(d, S.state, c)) continue;
        int sign = 1;
        for (int p = 0; p < c; ++p) {
          if (S.state.values[static_cast<std::size_t>(p)] == lowest_value(d, p)) continue;
          State b = S.state;
          b.values[static_cast<std::size_t>(p)] -= 1;
          const Summand& B = K.summand(b);
          sign = square_obstruction(B.circles(), S.circles(), circles(raised(b, c)), circles(raised(S.state, c))) *
                 B.cube_sign[static_cast<std::size_t>(c)];
          break;
        }
        S.cube_sign[static_cast<std::size_t>(c)] = sign;
      }
    }
}

SparseMatrix height_differential(const ChainComplex& K, int h, int only, int jobs) {
  auto it = K.groups.find(h);
  if (it == K.groups.end() || !K.groups.count(h + 1)) return SparseMatrix(K.rank(h + 1), K.rank(h));
  const auto& sources = it->second;
  std::vector<std::vector<Triplet>> parts(sources.size());
  parallel_for(sources.size(), jobs, [&](std::size_t i) { edge_triplets(K, sources[i], only, parts[i]); });
  std::vector<Triplet> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return SparseMatrix::from_triplets(K.rank(h + 1), K.rank(h), std::move(all));
}

}  // namespace

int Summand::qdeg(std::uint64_t word) const { return word_degree(word, circles()) + q_shift; }

std::size_t ChainComplex::rank(int h) const {
  auto it = groups.find(h);
  if (it == groups.end() || it->second.empty()) return 0;
  const Summand& last = it->second.back();
  return last.offset + last.rank();
}

std::size_t ChainComplex::total_rank() const {
  std::size_t n = 0;
  for (const auto& [h, g] : groups) n += rank(h);
  return n;
}

const Summand& ChainComplex::summand(const State& s) const {
  auto it = index.find(s);
  if (it == index.end()) throw std::out_of_range("state not in complex");
  return groups.at(it->second.first)[it->second.second];
}

std::vector<int> ChainComplex::qdegrees(int h) const {
  std::vector<int> out;
  auto it = groups.find(h);
  if (it == groups.end()) return out;
  out.reserve(rank(h));
  for (const Summand& s : it->second)
    for (std::uint64_t w = 0; w < s.rank(); ++w) out.push_back(s.qdeg(w));
  return out;
}

SparseMatrix ChainComplex::d(int h) const {
  auto it = differential.find(h);
  if (it != differential.end()) return it->second;
  return SparseMatrix(rank(h + 1), rank(h));
}

TwistStep twist_sign(const std::vector<int>& basis, int c, bool wedge) {
  TwistStep st;
  auto after = std::count_if(basis.begin(), basis.end(), [c](int x) { return x > c; });
  st.sign = after % 2 ? -1 : 1;
  st.basis = basis;
  auto pos = std::lower_bound(st.basis.begin(), st.basis.end(), c);
  bool present = pos != st.basis.end() && *pos == c;
  if (wedge) {
    if (present) {
      st.sign = 0;
    } else {
      st.basis.insert(pos, c);
    }
  } else {
    if (!present) {
      st.sign = 0;
    } else {
      st.basis.erase(pos);
    }
  }
  return st;
}

TwistStep twist_sign(const Summand& s, const LinkDiagram& d, int c) {
  return twist_sign(s.twist_basis, c, d.crossing(c).sign() > 0);
}

ChainComplex build_complex(const LinkDiagram& d, Ring ring, const BuildOptions& opts) {
  ChainComplex K;
  K.ring = ring;
  K.diagram = d;
  K.saddles = opts.saddles ? *opts.saddles : default_saddle_maps(ring);
  if (K.saddles.ring != ring) throw RingMismatch();
  K.fault = opts.fault;

  std::vector<State> states = enumerate_states(d);
  std::vector<Summand> all(states.size());
  int w = d.writhe();
  parallel_for(states.size(), opts.jobs, [&](std::size_t i) {
    Summand& s = all[i];
    s.state = states[i];
    s.graph = resolve(d, s.state);
    s.height = s.state.height();
    s.q_shift = -(w + s.height);
    for (int c = 0; c < d.size(); ++c)
      if (s.state.values[static_cast<std::size_t>(c)] != 0) s.twist_basis.push_back(c);
  });
  for (auto& s : all) {
    auto& g = K.groups[s.height];
    s.offset = g.empty() ? 0 : g.back().offset + g.back().rank();
    K.index[s.state] = {s.height, g.size()};
    g.push_back(std::move(s));
  }
  if (K.fault) {
    auto it = K.index.find(K.fault->state);
    if (it == K.index.end() || K.fault->crossing < 0 || K.fault->crossing >= d.size() ||
        !eligible(d, K.fault->state, K.fault->crossing))
      throw ValidationError("fault injection does not name a cube edge");
  }
  assign_cube_signs(K);
  for (int h = K.min_height(); h < K.max_height(); ++h) K.differential[h] = height_differential(K, h, -1, opts.jobs);
  return K;
}

EdgeBlock edge_block(const ChainComplex& K, const State& s, int c) {
  const Summand& src = K.summand(s);
  if (!eligible(K.diagram, s, c)) throw std::invalid_argument("crossing cannot be raised at this state");
  EdgeBlock b;
  b.target = raised(s, c);
  const Summand& dst = K.summand(b.target);
  b.sign = twist_sign(src, K.diagram, c).sign;
  if (K.fault && K.fault->state == s && K.fault->crossing == c) b.sign = -b.sign;
  EdgeTransition t = cube_edge(K.diagram, s, c, src.graph, dst.graph);
  b.matrix = negated_if(saddle_map(K.diagram, t, src.graph, dst.graph, K.saddles),
                       src.cube_sign[static_cast<std::size_t>(c)]);
  return b;
}

SparseMatrix partial_differential(const ChainComplex& K, int h, int crossing) {
  return height_differential(K, h, crossing, 1);
}

std::string DSquaredReport::to_string() const {
  std::ostringstream os;
  os << (ok ? "d^2 = 0" : "d^2 != 0") << " (" << compositions << " composites";
  if (!ok) os << ", " << nonzero_entries << " nonzero entries";
  os << ")";
  for (const auto& f : faults) {
    os << "\n  square at state (";
    for (std::size_t i = 0; i < f.state.values.size(); ++i) os << (i ? "," : "") << f.state.values[i];
    os << ") crossings " << f.c1 << "," << f.c2;
  }
  return os.str();
}

DSquaredReport verify_d_squared(const ChainComplex& K) {
  DSquaredReport r;
  const LinkDiagram& d = K.diagram;
  for (int h = K.min_height(); h + 1 < K.max_height(); ++h) {
    SparseMatrix p = K.d(h + 1) * K.d(h);
    ++r.compositions;
    if (p.is_zero()) continue;
    r.ok = false;
    r.nonzero_entries += p.nnz();
    for (const Summand& s : K.groups.at(h))
      for (int c1 = 0; c1 < d.size(); ++c1)
        for (int c2 = c1 + 1; c2 < d.size(); ++c2) {
          if (!eligible(d, s.state, c1) || !eligible(d, s.state, c2)) continue;
          EdgeBlock a1 = edge_block(K, s.state, c1), a2 = edge_block(K, s.state, c2);
          EdgeBlock b1 = edge_block(K, a1.target, c2), b2 = edge_block(K, a2.target, c1);
          SparseMatrix sum = negated_if(b1.matrix * a1.matrix, b1.sign * a1.sign) +
                             negated_if(b2.matrix * a2.matrix, b2.sign * a2.sign);
          if (!sum.is_zero() && r.faults.size() < 16) r.faults.push_back({s.state, c1, c2});
        }
  }
  return r;
}

SquareReport square_report(const ChainComplex& K) {
  SquareReport r;
  const LinkDiagram& d = K.diagram;
  for (const auto& [h, group] : K.groups)
    for (const Summand& s : group)
      for (int c1 = 0; c1 < d.size(); ++c1)
        for (int c2 = c1 + 1; c2 < d.size(); ++c2) {
          if (!eligible(d, s.state, c1) || !eligible(d, s.state, c2)) continue;
          ++r.squares;
          EdgeBlock a1 = edge_block(K, s.state, c1), a2 = edge_block(K, s.state, c2);
          EdgeBlock b1 = edge_block(K, a1.target, c2), b2 = edge_block(K, a2.target, c1);
          SparseMatrix p1 = b1.matrix * a1.matrix, p2 = b2.matrix * a2.matrix;
          if (!(p1 == p2)) ++r.untwisted_failures;
          if (!(negated_if(p1, b1.sign * a1.sign) + negated_if(p2, b2.sign * a2.sign)).is_zero())
            ++r.twisted_failures;
        }
  return r;
}

bool q_homogeneous(const ChainComplex& K) {
  for (const auto& [h, m] : K.differential) {
    auto src = K.qdegrees(h), dst = K.qdegrees(h + 1);
    for (const auto& t : m.triplets())
      if (src[t.col] != dst[t.row]) return false;
  }
  return true;
}

nlohmann::json complex_to_json(const ChainComplex& K) {
  nlohmann::json j;
  j["ring"] = ring_name(K.ring);
  j["pd"] = raw_pd(K.diagram);
  j["writhe"] = K.diagram.writhe();
  j["summands"] = nlohmann::json::array();
  for (const auto& [h, group] : K.groups)
    for (const Summand& s : group)
      j["summands"].push_back({{"state", s.state.values},
                               {"height", s.height},
                               {"circles", s.circles()},
                               {"q_shift", s.q_shift},
                               {"twist_basis", s.twist_basis},
                               {"cube_sign", s.cube_sign},
                               {"offset", s.offset}});
  j["differentials"] = nlohmann::json::array();
  for (const auto& [h, m] : K.differential) {
    nlohmann::json e = nlohmann::json::array();
    for (const auto& t : m.triplets()) e.push_back({t.row, t.col, t.value});
    j["differentials"].push_back({{"height", h}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}});
  }
  return j;
}

std::string complex_to_text(const ChainComplex& K) {
  std::ostringstream os;
  os << "ring " << ring_name(K.ring) << "\npd " << raw_pd(K.diagram) << "\nwrithe " << K.diagram.writhe() << "\n";
  for (const auto& [h, group] : K.groups) {
    os << "height " << h << " rank " << K.rank(h) << "\n";
    for (const Summand& s : group) {
      os << "  state";
      for (int v : s.state.values) os << ' ' << v;
      os << " | circles " << s.circles() << " q_shift " << s.q_shift << " offset " << s.offset << " twist";
      for (int c : s.twist_basis) os << ' ' << c;
      os << " | cube";
      for (int e : s.cube_sign) os << ' ' << e;
      os << "\n";
    }
  }
  for (const auto& [h, m] : K.differential) {
    os << "d " << h << " " << m.rows() << "x" << m.cols() << " nnz " << m.nnz() << "\n";
    for (const auto& t : m.triplets()) os << "  " << t.row << ' ' << t.col << ' ' << t.value << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- R1 maps

std::string R1Coefficients::to_string() const {
  std::ostringstream os;
  auto put = [&](const char* name, const std::array<std::int64_t, 3>& v) {
    os << name << "=(" << v[0] << "," << v[1] << "," << v[2] << ")";
  };
  put("f", f);
  os << ' ';
  put("g", g);
  os << ' ';
  put("D", homotopy);
  return os.str();
}

bool R1Identities::all() const {
  return f_chain && g_chain && f_after_g && homotopy && local_zero && local_inverse && local_homotopy && graded;
}

std::string R1Identities::to_string() const {
  std::ostringstream os;
  auto put = [&](const char* name, bool v) { os << name << (v ? " ok" : " FAIL") << "; "; };
  put("f chain", f_chain);
  put("g chain", g_chain);
  put("fg=Id", f_after_g);
  put("Id-gf=Dd+dD", homotopy);
  put("local zero", local_zero);
  put("local inverse", local_inverse);
  put("local homotopy", local_homotopy);
  put("graded", graded);
  std::string s = os.str();
  return s.substr(0, s.size() - 2);
}

namespace {

IntMatrix unit_local(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
  IntMatrix m(rows, cols);
  m(r, c) = 1;
  return m;
}

// Elementary local matrices for each coefficient slot; see complex.hpp.
// Two-factor words are indexed strand bit + 2 * loop bit.
std::array<IntMatrix, 3> m_like() {
  return {unit_local(2, 4, 0, 0), unit_local(2, 4, 1, 2), unit_local(2, 4, 1, 1)};
}
std::array<IntMatrix, 3> mu_like() {
  return {unit_local(2, 4, 0, 2), unit_local(2, 4, 0, 1), unit_local(2, 4, 1, 3)};
}
std::array<IntMatrix, 3> sigma_like() {
  return {unit_local(4, 2, 0, 0), unit_local(4, 2, 2, 1), unit_local(4, 2, 1, 1)};
}
std::array<IntMatrix, 3> delta_like() {
  return {unit_local(4, 2, 2, 0), unit_local(4, 2, 1, 0), unit_local(4, 2, 3, 1)};
}

struct R1Parts {
  CurlSite site;
  ArcId merged = 0;
  ChainComplex curl, reduced;
  std::map<int, std::array<SparseMatrix, 3>> f, g, homotopy;
};

int circle_of_arc(const LinkDiagram& d, const ResolvedGraph& g, ArcId a) {
  return g.circle_of[static_cast<std::size_t>(d.arc_index(a))];
}

// Circles of `from` avoiding `skip`, matched to circles of `to` by a shared arc.
std::vector<std::pair<int, int>> carry(const ResolvedGraph& gf, const LinkDiagram& dt, const ResolvedGraph& gt,
                                       const std::set<int>& skip) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < gf.circle_count(); ++i) {
    if (skip.count(i)) continue;
    ArcId a = gf.circles[static_cast<std::size_t>(i)].front();
    out.push_back({i, circle_of_arc(dt, gt, a)});
  }
  return out;
}

State without(const State& s, int c) {
  State t;
  for (std::size_t i = 0; i < s.values.size(); ++i)
    if (static_cast<int>(i) != c) t.values.push_back(s.values[i]);
  return t;
}

LinkDiagram curl_last(const LinkDiagram& d, int x) {
  std::vector<Crossing> cs = d.crossings();
  std::rotate(cs.begin() + x, cs.begin() + x + 1, cs.end());
  return LinkDiagram(std::move(cs), d.loops());
}

R1Parts r1_parts(const LinkDiagram& d, int x, const SaddleMaps* saddles) {
  auto site = curl_at(d, x);
  if (!site) throw ValidationError("crossing " + std::to_string(x) + " carries no curl");
  if (x != d.size() - 1) return r1_parts(curl_last(d, x), d.size() - 1, saddles);
  R1Parts P;
  P.site = *site;
  MoveSpec undo;
  undo.kind = MoveKind::R1;
  undo.direction = MoveDirection::Undo;
  undo.crossings[0] = x;
  LinkDiagram dp = apply_move(d, undo);
  P.merged = std::min({site->in, site->loop, site->out});
  const SaddleMaps& m = saddles ? *saddles : default_saddle_maps(Ring::Graded);
  BuildOptions opts;
  opts.saddles = &m;
  P.curl = build_complex(d, m.ring, opts);
  P.reduced = build_complex(dp, m.ring, opts);
  const ChainComplex& K = P.curl;
  const ChainComplex& R = P.reduced;
  bool positive = site->sign > 0;
  int lower = positive ? 1 : -1;  // value of x at the double-edge resolution

  auto f_loc = positive ? m_like() : mu_like();
  auto g_loc = positive ? sigma_like() : delta_like();
  auto h_loc = positive ? delta_like() : m_like();

  std::map<int, std::array<std::vector<Triplet>, 3>> ft, gt, ht;
  for (const auto& [h, group] : K.groups)
    for (const Summand& S : group) {
      if (S.state.values[static_cast<std::size_t>(x)] != 0) continue;
      const Summand& Rs = R.summand(without(S.state, x));
      if (Rs.height != h) throw std::logic_error("R1: height mismatch between curl and reduced states");
      int strand = circle_of_arc(d, S.graph, site->in);
      int loop = circle_of_arc(d, S.graph, site->loop);
      if (strand == loop) throw std::logic_error("R1: loop is not split off by the oriented smoothing");
      auto fwd = carry(S.graph, R.diagram, Rs.graph, {strand, loop});
      std::vector<std::pair<int, int>> back;
      for (auto [a, b] : fwd) back.push_back({b, a});
      LocalFrame two{&d, &S.graph, {site->in, site->loop}};
      LocalFrame one{&R.diagram, &Rs.graph, {P.merged}};
      for (std::size_t i = 0; i < 3; ++i) {
        local_map_triplets(two, one, fwd, f_loc[i], Rs.offset, S.offset, 1, ft[h][i]);
        local_map_triplets(one, two, back, g_loc[i], S.offset, Rs.offset, 1, gt[h][i]);
      }

      State other = S.state;
      other.values[static_cast<std::size_t>(x)] = lower;
      const Summand& T = K.summand(other);
      const Summand& low = positive ? S : T;  // source of the cube edge at x
      int sign = twist_sign(low, d, x).sign * low.cube_sign[static_cast<std::size_t>(x)];
      int tc = circle_of_arc(d, T.graph, site->in);
      LocalFrame merged{&d, &T.graph, {site->in}};
      for (std::size_t i = 0; i < 3; ++i) {
        if (positive) {
          auto c = carry(T.graph, d, S.graph, {tc});
          local_map_triplets(merged, two, c, h_loc[i], S.offset, T.offset, sign, ht[T.height][i]);
        } else {
          auto c = carry(S.graph, d, T.graph, {strand, loop});
          local_map_triplets(two, merged, c, h_loc[i], T.offset, S.offset, sign, ht[S.height][i]);
        }
      }
    }
  for (int h = K.min_height(); h <= K.max_height(); ++h)
    for (std::size_t i = 0; i < 3; ++i) {
      P.f[h][i] = SparseMatrix::from_triplets(R.rank(h), K.rank(h), ft[h][i]);
      P.g[h][i] = SparseMatrix::from_triplets(K.rank(h), R.rank(h), gt[h][i]);
      P.homotopy[h][i] = SparseMatrix::from_triplets(K.rank(h - 1), K.rank(h), ht[h][i]);
    }
  return P;
}

R1Maps combine(const R1Parts& P, const R1Coefficients& k) {
  R1Maps M;
  M.site = P.site;
  M.merged = P.merged;
  M.coefficients = k;
  M.curl = P.curl;
  M.reduced = P.reduced;
  for (const auto& [h, parts] : P.f) M.f[h] = linear(parts, k.f);
  for (const auto& [h, parts] : P.g) M.g[h] = linear(parts, k.g);
  for (const auto& [h, parts] : P.homotopy) M.homotopy[h] = linear(parts, k.homotopy);
  return M;
}

SparseMatrix lookup(const std::map<int, SparseMatrix>& m, int h, std::size_t rows, std::size_t cols) {
  auto it = m.find(h);
  return it == m.end() ? SparseMatrix(rows, cols) : it->second;
}

// Diagonal projection onto the summands of height h whose crossing x has value v.
SparseMatrix projection(const ChainComplex& K, int h, int x, int v) {
  std::vector<Triplet> t;
  auto it = K.groups.find(h);
  if (it != K.groups.end())
    for (const Summand& s : it->second)
      if (s.state.values[static_cast<std::size_t>(x)] == v)
        for (std::uint64_t w = 0; w < s.rank(); ++w) t.push_back({s.offset + w, s.offset + w, 1});
  return SparseMatrix::from_triplets(K.rank(h), K.rank(h), std::move(t));
}

bool preserves_q(const SparseMatrix& m, const std::vector<int>& src, const std::vector<int>& dst) {
  for (const auto& t : m.triplets())
    if (src[t.col] != dst[t.row]) return false;
  return true;
}

struct Checker {
  const ChainComplex& K;
  const ChainComplex& R;
  int x;
  bool positive;
  int lo, hi;

  SparseMatrix F(const R1Maps& M, int h) const { return lookup(M.f, h, R.rank(h), K.rank(h)); }
  SparseMatrix G(const R1Maps& M, int h) const { return lookup(M.g, h, K.rank(h), R.rank(h)); }
  SparseMatrix H(const R1Maps& M, int h) const { return lookup(M.homotopy, h, K.rank(h - 1), K.rank(h)); }

  bool f_chain(const R1Maps& M) const {
    for (int h = lo; h <= hi; ++h)
      if (!(R.d(h) * F(M, h) == F(M, h + 1) * K.d(h))) return false;
    return true;
  }
  bool g_chain(const R1Maps& M) const {
    for (int h = lo; h <= hi; ++h)
      if (!(K.d(h) * G(M, h) == G(M, h + 1) * R.d(h))) return false;
    return true;
  }
  bool f_after_g(const R1Maps& M) const {
    for (int h = lo; h <= hi; ++h)
      if (!(F(M, h) * G(M, h) == SparseMatrix::identity(R.rank(h)))) return false;
    return true;
  }
};

}  // namespace

R1Maps build_r1_maps(const LinkDiagram& d, int crossing, const R1Coefficients& k, const SaddleMaps* saddles) {
  return combine(r1_parts(d, crossing, saddles), k);
}

R1Identities check_r1_identities(const R1Maps& M) {
  const ChainComplex& K = M.curl;
  const ChainComplex& R = M.reduced;
  int x = M.site.crossing;
  bool positive = M.site.sign > 0;
  Checker ck{K, R, x, positive, K.min_height() - 1, K.max_height() + 1};
  R1Identities r;
  r.f_chain = ck.f_chain(M);
  r.g_chain = ck.g_chain(M);
  r.f_after_g = ck.f_after_g(M);
  r.homotopy = r.local_zero = r.local_inverse = r.local_homotopy = r.graded = true;
  int lower = positive ? 1 : -1;
  for (int h = ck.lo; h <= ck.hi; ++h) {
    SparseMatrix f = ck.F(M, h), g = ck.G(M, h), D = ck.H(M, h);
    SparseMatrix gf = g * f;
    SparseMatrix id = SparseMatrix::identity(K.rank(h));
    if (!(id - gf == ck.H(M, h + 1) * K.d(h) + K.d(h - 1) * D)) r.homotopy = false;

    SparseMatrix dx = partial_differential(K, h, x);
    SparseMatrix dx_prev = partial_differential(K, h - 1, x);
    SparseMatrix p0 = projection(K, h, x, 0), p1 = projection(K, h, x, lower);
    if (positive) {
      if (!(dx * g).is_zero()) r.local_zero = false;
      if (!(dx_prev * D == p1)) r.local_inverse = false;
      if (!(p0 - gf == ck.H(M, h + 1) * dx)) r.local_homotopy = false;
    } else {
      if (!(ck.F(M, h + 1) * dx).is_zero()) r.local_zero = false;
      if (!(ck.H(M, h + 1) * dx == p1)) r.local_inverse = false;
      if (!(p0 - gf == dx_prev * D)) r.local_homotopy = false;
    }
    auto qk = K.qdegrees(h), qr = R.qdegrees(h), qk_prev = K.qdegrees(h - 1);
    if (!preserves_q(f, qk, qr) || !preserves_q(g, qr, qk) || !preserves_q(D, qk, qk_prev)) r.graded = false;
  }
  return r;
}

std::vector<R1Coefficients> solve_r1_coefficients(const LinkDiagram& d, int crossing, const SaddleMaps* saddles,
                                                  int range) {
  R1Parts P = r1_parts(d, crossing, saddles);
  const ChainComplex& K = P.curl;
  Checker ck{K, P.reduced, P.site.crossing, P.site.sign > 0, K.min_height() - 1, K.max_height() + 1};
  std::vector<std::array<std::int64_t, 3>> triples;
  for (std::int64_t a = -range; a <= range; ++a)
    for (std::int64_t b = -range; b <= range; ++b)
      for (std::int64_t c = -range; c <= range; ++c)
        if (a || b || c) triples.push_back({a, b, c});

  // The chain conditions on f and on g are independent, so filter them first.
  std::vector<std::array<std::int64_t, 3>> fs, gs;
  for (const auto& t : triples) {
    R1Coefficients k;
    k.f = t;
    k.g = t;
    R1Maps M = combine(P, k);
    if (ck.f_chain(M)) fs.push_back(t);
    if (ck.g_chain(M)) gs.push_back(t);
  }
  std::vector<R1Coefficients> out;
  for (const auto& f : fs)
    for (const auto& g : gs) {
      R1Coefficients k;
      k.f = f;
      k.g = g;
      if (!ck.f_after_g(combine(P, k))) continue;
      for (const auto& h : triples) {
        k.homotopy = h;
        if (check_r1_identities(combine(P, k)).all()) out.push_back(k);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool loop_local(const R1Coefficients& k, int sign) {
  const auto& m = sign > 0 ? k.f : k.g;
  return m[1] == 0 && m[0] == m[2];
}

const R1Coefficients* choose_r1(const std::vector<R1Coefficients>& sols, int sign) {
  const R1Coefficients* best = nullptr;
  for (const auto& k : sols)
    if (loop_local(k, sign) && (!best || *best < k)) best = &k;
  if (!best && !sols.empty()) best = &sols.back();
  return best;
}

R1Maps r1_chain_maps(const LinkDiagram& d, int crossing) {
  auto site = curl_at(d, crossing);
  if (!site) throw ValidationError("crossing " + std::to_string(crossing) + " carries no curl");

  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<R1Coefficients>> models;
  std::vector<R1Coefficients> local;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(site->sign, site->side);
    auto it = models.find(key);
    if (it == models.end()) {
      LinkDiagram o = parse_pd("O");
      MoveSpec mv;
      mv.arc = o.arcs().front();
      mv.sign = site->sign;
      mv.side = site->side;
      it = models.emplace(key, solve_r1_coefficients(apply_move(o, mv), 0)).first;
    }
    local = it->second;
  }
  // The bare curl cannot tell the loop sides apart, so D is tried with both signs.
  std::set<R1Coefficients> candidates(local.begin(), local.end());
  for (auto k : local) {
    for (auto& v : k.homotopy) v = -v;
    candidates.insert(k);
  }
  std::vector<R1Coefficients> order(candidates.begin(), candidates.end());
  std::stable_sort(order.begin(), order.end(), [&](const R1Coefficients& a, const R1Coefficients& b) {
    bool la = loop_local(a, site->sign), lb = loop_local(b, site->sign);
    if (la != lb) return la;
    return b < a;
  });
  R1Parts P = r1_parts(d, crossing, nullptr);
  for (const auto& k : order) {
    R1Maps M = combine(P, k);
    if (check_r1_identities(M).all()) return M;
  }
  auto full = solve_r1_coefficients(d, crossing);
  const R1Coefficients* k = choose_r1(full, site->sign);
  if (!k) throw SolverError("R1 identities unsatisfiable at crossing " + std::to_string(crossing));
  return build_r1_maps(d, crossing, *k);
}

const SaddleMaps& default_saddle_maps(Ring ring) {
  auto select = [](Ring r) {
    const SolverReport& rep = solved_saddles(r);
    if (rep.classes.size() == 1) return saddle_maps(rep.chosen, r);
    for (const auto& cls : rep.classes) {
      SaddleMaps m = saddle_maps(cls.back(), r);
      bool ok = true;
      for (int sign : {1, -1})
        for (int side : {1, -1}) {
          LinkDiagram o = parse_pd("O");
          MoveSpec mv;
          mv.arc = o.arcs().front();
          mv.sign = sign;
          mv.side = side;
          if (solve_r1_coefficients(apply_move(o, mv), 0, &m).empty()) ok = false;
        }
      if (ok) return m;
    }
    throw SolverError("no saddle class satisfies the R1 identities");
  };
  if (ring == Ring::Graded) {
    static const SaddleMaps graded = select(Ring::Graded);
    return graded;
  }
  static const SaddleMaps lee = select(Ring::Lee);
  return lee;
}

}  // namespace okh
