#include "okh/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "okh/error.hpp"
#include "okh/parallel.hpp"
#include "okh/snf.hpp"

namespace okh {

std::size_t BigradedHomology::total_free() const {
  std::size_t n = 0;
  for (const auto& [k, g] : table) n += g.free;
  for (const auto& [k, g] : by_height) n += g.free;
  return n;
}

bool BigradedHomology::has_torsion() const {
  for (const auto& [k, g] : table)
    if (!g.torsion.empty()) return true;
  for (const auto& [k, g] : by_height)
    if (!g.torsion.empty()) return true;
  return false;
}

std::string BigradedHomology::poincare() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](std::size_t c, int h, std::optional<int> q) {
    if (c == 0) return;
    os << (first ? "" : " + ");
    first = false;
    std::string mono;
    if (h != 0) mono = "t^" + std::to_string(h);
    if (q && *q != 0) mono += (mono.empty() ? "q^" : "*q^") + std::to_string(*q);
    if (mono.empty()) {
      os << c;
    } else {
      if (c != 1) os << c << '*';
      os << mono;
    }
  };
  // Descending height, then descending q.
  for (auto it = table.rbegin(); it != table.rend(); ++it) term(it->second.free, it->first.first, it->first.second);
  for (auto it = by_height.rbegin(); it != by_height.rend(); ++it) term(it->second.free, it->first, std::nullopt);
  if (first) os << '0';
  return os.str();
}

nlohmann::json BigradedHomology::to_json() const {
  nlohmann::json j;
  j["ring"] = ring_name(ring);
  j["groups"] = nlohmann::json::array();
  for (const auto& [k, g] : table)
    j["groups"].push_back({{"height", k.first}, {"q", k.second}, {"free", g.free}, {"torsion", g.torsion}});
  for (const auto& [h, g] : by_height)
    j["groups"].push_back({{"height", h}, {"free", g.free}, {"torsion", g.torsion}});
  j["total_free"] = total_free();
  j["poincare"] = poincare();
  return j;
}

namespace {

std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max()) throw OverflowError();
  return static_cast<std::int64_t>(x);
}

// Block key: q in the graded ring, q mod 4 in the Lee ring.
int block_key(Ring r, int q) { return r == Ring::Graded ? q : ((q % 4) + 4) % 4; }

struct Block {
  int height;
  int key;
  std::vector<std::size_t> cols;  // in C_h
  std::vector<std::size_t> rows;  // in C_{h+1}
  std::vector<BigInt> factors;    // of d_h restricted
};

}  // namespace

BigradedHomology homology(const ChainComplex& K, int jobs) {
  for (int h = K.min_height(); h + 1 < K.max_height(); ++h)
    if (!(K.d(h + 1) * K.d(h)).is_zero()) throw VerificationError("d^2 != 0; " + verify_d_squared(K).to_string());

  // Basis indices of each height grouped by block key.
  std::map<int, std::map<int, std::vector<std::size_t>>> idx;
  for (int h = K.min_height(); h <= K.max_height(); ++h) {
    auto q = K.qdegrees(h);
    for (std::size_t i = 0; i < q.size(); ++i) idx[h][block_key(K.ring, q[i])].push_back(i);
  }
  std::vector<Block> blocks;
  for (int h = K.min_height(); h < K.max_height(); ++h)
    for (const auto& [key, cols] : idx[h]) {
      auto it = idx[h + 1].find(key);
      if (it == idx[h + 1].end()) continue;
      blocks.push_back({h, key, cols, it->second, {}});
    }
  parallel_for(blocks.size(), jobs, [&](std::size_t i) {
    Block& b = blocks[i];
    b.factors = invariant_factors(K.d(b.height).submatrix(b.rows, b.cols));
  });
  std::map<std::pair<int, int>, const Block*> out_of;  // (h, key) -> block of d_h
  for (const auto& b : blocks) out_of[{b.height, b.key}] = &b;

  BigradedHomology H;
  H.ring = K.ring;
  for (const auto& [h, keys] : idx)
    for (const auto& [key, basis] : keys) {
      HomologyGroup g;
      std::size_t rank_out = 0, rank_in = 0;
      if (auto it = out_of.find({h, key}); it != out_of.end()) rank_out = it->second->factors.size();
      if (auto it = out_of.find({h - 1, key}); it != out_of.end()) {
        rank_in = it->second->factors.size();
        for (const BigInt& f : it->second->factors) {
          BigInt t = f;
          if (K.ring == Ring::Lee)
            while (t % 2 == 0) t /= 2;
          if (t > 1) g.torsion.push_back(to_int64(t));
        }
      }
      g.free = basis.size() - rank_out - rank_in;
      if (K.ring == Ring::Graded) {
        if (!g.zero()) H.table[{h, key}] = g;
      } else {
        HomologyGroup& acc = H.by_height[h];
        acc.free += g.free;
        acc.torsion.insert(acc.torsion.end(), g.torsion.begin(), g.torsion.end());
      }
    }
  for (auto it = H.by_height.begin(); it != H.by_height.end();) {
    std::sort(it->second.torsion.begin(), it->second.torsion.end());
    it = it->second.zero() ? H.by_height.erase(it) : std::next(it);
  }
  return H;
}

LaurentPoly graded_euler_characteristic(const ChainComplex& K) {
  LaurentPoly chi;
  for (const auto& [h, group] : K.groups) {
    std::int64_t sign = h % 2 ? -1 : 1;
    for (const Summand& s : group)
      for (std::uint64_t w = 0; w < s.rank(); ++w) chi += LaurentPoly::monomial(sign, s.qdeg(w));
  }
  return chi;
}

LaurentPoly graded_euler_characteristic(const BigradedHomology& H) {
  if (H.ring != Ring::Graded) throw RingMismatch();
  LaurentPoly chi;
  for (const auto& [k, g] : H.table)
    chi += LaurentPoly::monomial(k.first % 2 ? -static_cast<std::int64_t>(g.free) : static_cast<std::int64_t>(g.free),
                                 k.second);
  return chi;
}

BigradedHomology khovanov_homology(const LinkDiagram& d, int jobs) {
  BuildOptions o;
  o.jobs = jobs;
  return homology(build_complex(d, Ring::Graded, o), jobs);
}

BigradedHomology lee_homology(const LinkDiagram& d, int jobs) {
  BuildOptions o;
  o.jobs = jobs;
  return homology(build_complex(d, Ring::Lee, o), jobs);
}

std::string CanonicalReport::to_string() const {
  std::ostringstream os;
  os << classes.size() << " canonical classes, " << (all_cycles ? "all cycles" : "NOT all cycles") << ", "
     << (independent ? "independent" : "DEPENDENT");
  for (const auto& c : classes) {
    os << "\n  eps (";
    for (std::size_t i = 0; i < c.epsilon.size(); ++i) os << (i ? "," : "") << (c.epsilon[i] > 0 ? "+" : "-");
    os << ") height " << c.height << " terms " << c.chain.size() << (c.cycle ? " cycle" : " NOT a cycle");
  }
  return os.str();
}

CanonicalReport lee_canonical_classes(const LinkDiagram& d, const ChainComplex* lee) {
  ChainComplex own;
  if (!lee) {
    own = build_complex(d, Ring::Lee);
    lee = &own;
  }
  if (lee->ring != Ring::Lee) throw RingMismatch();
  const ChainComplex& K = *lee;
  int m = d.component_count();
  CanonicalReport rep;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    CanonicalClass cls;
    for (int i = 0; i < m; ++i) cls.epsilon.push_back((mask >> i) & 1U ? -1 : 1);
    auto colour = [&](ArcId a) { return cls.epsilon[static_cast<std::size_t>(d.component_of(a))]; };
    for (int c = 0; c < d.size(); ++c) {
      const Crossing& x = d.crossing(c);
      bool same = colour(x.ends[0]) == colour(x.ends[static_cast<std::size_t>(x.over_in)]);
      cls.state.values.push_back(same ? 0 : x.sign());
    }
    const Summand& s = K.summand(cls.state);
    cls.height = s.height;
    for (std::uint64_t w = 0; w < s.rank(); ++w) {
      std::int64_t coef = 1;
      for (int i = 0; i < s.circles(); ++i)
        if ((w >> i) & 1U) coef *= colour(s.graph.circles[static_cast<std::size_t>(i)].front());
      cls.chain.push_back({s.offset + w, coef});
    }
    std::vector<Triplet> t;
    for (auto [i, v] : cls.chain) t.push_back({i, 0, v});
    SparseMatrix v = SparseMatrix::from_triplets(K.rank(s.height), 1, std::move(t));
    cls.cycle = (K.d(s.height) * v).is_zero();
    rep.all_cycles = rep.all_cycles && cls.cycle;
    rep.classes.push_back(std::move(cls));
  }
  std::set<int> heights;
  for (const auto& c : rep.classes) heights.insert(c.height);
  for (int h : heights) {
    SparseMatrix im = K.d(h - 1);
    std::vector<Triplet> t = im.triplets();
    std::size_t col = im.cols(), count = 0;
    for (const auto& c : rep.classes) {
      if (c.height != h) continue;
      for (auto [i, v] : c.chain) t.push_back({i, col, v});
      ++col;
      ++count;
    }
    std::size_t base = matrix_rank(im);
    std::size_t with = matrix_rank(SparseMatrix::from_triplets(K.rank(h), col, std::move(t)));
    if (with != base + count) rep.independent = false;
  }
  return rep;
}

std::string SpectralReport::to_string() const {
  std::ostringstream os;
  os << "E2 (height, q):";
  for (const auto& [k, r] : e2_raw) os << " (" << k.first << "," << k.second << ")=" << r;
  os << "\nE2 (i, j):";
  for (const auto& [k, r] : e2_reindexed) os << " (" << k.first << "," << k.second << ")=" << r;
  os << "\nE2 total " << e2_total << ", E_inf total " << einf_total << ", deficit " << deficit
     << (consistent ? "" : " INCONSISTENT");
  return os.str();
}

SpectralReport spectral_sequence_report(const BigradedHomology& kh, const BigradedHomology& lee) {
  if (kh.ring != Ring::Graded || lee.ring != Ring::Lee) throw RingMismatch();
  SpectralReport r;
  for (const auto& [k, g] : kh.table) {
    if (g.free == 0) continue;
    r.e2_raw[k] = g.free;
    r.e2_reindexed[{k.first + k.second, k.second}] = g.free;
    r.e2_total += g.free;
  }
  r.einf_total = lee.total_free();
  r.consistent = r.e2_total >= r.einf_total && (r.e2_total - r.einf_total) % 2 == 0;
  r.deficit = r.e2_total >= r.einf_total ? r.e2_total - r.einf_total : 0;
  return r;
}

}  // namespace okh
