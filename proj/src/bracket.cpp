#include "okh/bracket.hpp"

#include <mutex>
#include <numeric>

#include "okh/error.hpp"
#include "okh/parallel.hpp"
#include "okh/resolution.hpp"

namespace okh {

LaurentPoly bracket_state_sum(const LinkDiagram& d, int jobs) {
  std::vector<State> states = enumerate_states(d);
  std::vector<LaurentPoly> parts(states.size());
  int w = d.writhe();
  LaurentPoly loop = loop_value();
  parallel_for(states.size(), jobs, [&](std::size_t i) {
    const State& s = states[i];
    int k = resolve(d, s).circle_count();
    std::int64_t sign = s.double_count() % 2 ? -1 : 1;
    parts[i] = LaurentPoly::monomial(sign, -(w + s.height())) * loop.pow(k);
  });
  LaurentPoly total;
  for (const auto& p : parts) total += p;
  return total;
}

SkeinTriple skein_triple(const LinkDiagram& d, int crossing) {
  LinkDiagram changed = crossing_change(d, crossing);
  LinkDiagram zero = oriented_smoothing(d, crossing);
  if (d.crossing(crossing).sign() > 0) return {d, changed, zero};
  return {changed, d, zero};
}

bool verify_skein(const LinkDiagram& plus, const LinkDiagram& minus, const LinkDiagram& zero) {
  bool site = false;
  for (int c = 0; c < plus.size() && !site; ++c) {
    if (plus.crossing(c).sign() < 0) continue;
    site = isomorphic(crossing_change(plus, c), minus) && isomorphic(oriented_smoothing(plus, c), zero);
  }
  if (!site) throw SiteMismatch("diagrams do not differ at a single skein site");
  LaurentPoly lhs = LaurentPoly::q(2) * bracket_state_sum(plus) - LaurentPoly::q(-2) * bracket_state_sum(minus);
  LaurentPoly rhs = (LaurentPoly::q(1) - LaurentPoly::q(-1)) * bracket_state_sum(zero);
  return lhs == rhs;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

}  // namespace

LaurentPoly jones_via_kauffman(const LinkDiagram& d) {
  // Polynomials in A during the expansion.
  std::vector<ArcId> arcs;
  for (const auto& x : d.crossings())
    for (ArcId a : x.ends) arcs.push_back(a);
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  auto id = [&](ArcId a) {
    return static_cast<int>(std::lower_bound(arcs.begin(), arcs.end(), a) - arcs.begin());
  };
  int n = d.size();
  LaurentPoly delta = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
  LaurentPoly sum;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    UnionFind uf(static_cast<int>(arcs.size()));
    int components = static_cast<int>(arcs.size());
    int a_count = 0;
    for (int c = 0; c < n; ++c) {
      const auto& e = d.crossing(c).ends;
      bool a_smoothing = !((mask >> c) & 1U);
      if (a_smoothing) {
        ++a_count;
        components -= uf.unite(id(e[0]), id(e[1]));
        components -= uf.unite(id(e[2]), id(e[3]));
      } else {
        components -= uf.unite(id(e[0]), id(e[3]));
        components -= uf.unite(id(e[1]), id(e[2]));
      }
    }
    int loops = components + static_cast<int>(d.loops().size());
    sum += LaurentPoly::q(a_count - (n - a_count)) * delta.pow(loops);
  }
  int w = d.writhe();
  LaurentPoly in_a = sum * LaurentPoly::monomial(w % 2 ? -1 : 1, -3 * w);
  LaurentPoly out;
  for (auto [k, c] : in_a.terms()) {
    if (k % 2) throw std::logic_error("odd power of A in the Kauffman bracket");
    int half = k / 2;
    out += LaurentPoly::monomial(half % 2 ? -c : c, half);
  }
  return out;
}

}  // namespace okh
