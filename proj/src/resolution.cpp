#include "okh/resolution.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace okh {

int State::height() const {
  int h = 0;
  for (int v : values) h += v;
  return h;
}

int State::double_count() const {
  int n = 0;
  for (int v : values) n += v != 0;
  return n;
}

bool valid_state(const LinkDiagram& d, const State& s) {
  if (static_cast<int>(s.values.size()) != d.size()) return false;
  for (int c = 0; c < d.size(); ++c) {
    int v = s.values[static_cast<std::size_t>(c)];
    int lo = d.crossing(c).sign() > 0 ? 0 : -1;
    if (v != lo && v != lo + 1) return false;
  }
  return true;
}

std::vector<State> enumerate_states(const LinkDiagram& d) {
  int n = d.size();
  if (n > 30) throw std::length_error("too many crossings to enumerate states");
  std::vector<State> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    State s;
    s.values.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
      int bit = static_cast<int>((m >> (n - 1 - c)) & 1U);
      s.values[static_cast<std::size_t>(c)] = (d.crossing(c).sign() > 0 ? 0 : -1) + bit;
    }
    out.push_back(std::move(s));
  }
  return out;
}

StrandRoles strand_roles(const Crossing& c) {
  if (c.sign() > 0) return {0, 1, 3, 2};
  return {1, 2, 0, 3};
}

int partner_slot(const Crossing& c, int value, int slot) {
  // Pairing a joins 0-1 and 2-3; pairing b joins 0-3 and 1-2. The oriented
  // smoothing is a at positive crossings and b at negative ones.
  bool oriented = value == 0;
  bool pairing_a = (c.sign() > 0) == oriented;
  if (pairing_a) return slot ^ 1;
  return 3 - slot;
}

ResolvedGraph resolve(const LinkDiagram& d, const State& s) {
  ResolvedGraph g;
  const auto& arcs = d.arcs();
  g.circle_of.assign(arcs.size(), -1);
  g.parity.assign(arcs.size(), 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (g.circle_of[i] >= 0) continue;
    int circle = static_cast<int>(g.circles.size());
    g.circles.emplace_back();
    ArcId a = arcs[i];
    if (d.is_loop(a)) {
      g.circle_of[i] = circle;
      g.circles.back().push_back(a);
      continue;
    }
    bool forward = true;
    for (;;) {
      auto idx = static_cast<std::size_t>(d.arc_index(a));
      if (g.circle_of[idx] >= 0) break;
      g.circle_of[idx] = circle;
      g.parity[idx] = forward ? 0 : 1;
      g.circles.back().push_back(a);
      Endpoint e = forward ? d.head(a) : d.tail(a);
      const Crossing& c = d.crossing(e.crossing);
      int p = partner_slot(c, s.values[static_cast<std::size_t>(e.crossing)], e.slot);
      a = c.ends[static_cast<std::size_t>(p)];
      forward = d.tail(a) == Endpoint{e.crossing, p};
    }
  }
  for (int c = 0; c < d.size(); ++c) {
    if (s.values[static_cast<std::size_t>(c)] == 0) continue;
    const Crossing& x = d.crossing(c);
    StrandRoles r = strand_roles(x);
    DoubleEdge e;
    e.crossing = c;
    e.v1 = {x.ends[static_cast<std::size_t>(r.right_in)], x.ends[static_cast<std::size_t>(r.left_in)]};
    e.v2 = {x.ends[static_cast<std::size_t>(r.right_out)], x.ends[static_cast<std::size_t>(r.left_out)]};
    for (int k = 0; k < 2; ++k) {
      e.v1_circles[static_cast<std::size_t>(k)] = g.circle_of[static_cast<std::size_t>(d.arc_index(e.v1[static_cast<std::size_t>(k)]))];
      e.v2_circles[static_cast<std::size_t>(k)] = g.circle_of[static_cast<std::size_t>(d.arc_index(e.v2[static_cast<std::size_t>(k)]))];
    }
    g.double_edges.push_back(e);
  }
  return g;
}

EdgeTransition cube_edge(const LinkDiagram& d, const State& s, int crossing) {
  State t = s;
  t.values.at(static_cast<std::size_t>(crossing)) += 1;
  return cube_edge(d, s, crossing, resolve(d, s), resolve(d, t));
}

EdgeTransition cube_edge(const LinkDiagram& d, const State& s, int crossing, const ResolvedGraph& g0,
                         const ResolvedGraph& g1) {
  const Crossing& x = d.crossing(crossing);
  int hi = x.sign() > 0 ? 1 : 0;
  if (s.values.at(static_cast<std::size_t>(crossing)) >= hi)
    throw std::invalid_argument("state is maximal at crossing " + std::to_string(crossing));
  EdgeTransition t;
  t.crossing = crossing;
  t.from = s;
  t.to = s;
  t.to.values[static_cast<std::size_t>(crossing)] += 1;

  std::vector<bool> hit0(static_cast<std::size_t>(g0.circle_count()), false);
  std::vector<bool> hit1(static_cast<std::size_t>(g1.circle_count()), false);
  for (ArcId a : x.ends) {
    hit0[static_cast<std::size_t>(g0.circle_of[static_cast<std::size_t>(d.arc_index(a))])] = true;
    hit1[static_cast<std::size_t>(g1.circle_of[static_cast<std::size_t>(d.arc_index(a))])] = true;
  }
  t.circle_map.assign(static_cast<std::size_t>(g0.circle_count()), -1);
  for (int i = 0; i < g0.circle_count(); ++i) {
    if (hit0[static_cast<std::size_t>(i)]) {
      t.touched_from.push_back(i);
      continue;
    }
    ArcId a = g0.circles[static_cast<std::size_t>(i)].front();
    t.circle_map[static_cast<std::size_t>(i)] = g1.circle_of[static_cast<std::size_t>(d.arc_index(a))];
  }
  for (int i = 0; i < g1.circle_count(); ++i)
    if (hit1[static_cast<std::size_t>(i)]) t.touched_to.push_back(i);
  int delta = g1.circle_count() - g0.circle_count();
  if (std::abs(delta) != 1) throw std::logic_error("cube edge changes circle count by " + std::to_string(delta));
  t.kind = delta < 0 ? EdgeKind::Merge : EdgeKind::Split;
  return t;
}

std::uint64_t module_rank(const ResolvedGraph& g) { return std::uint64_t{1} << g.circle_count(); }

std::string dump(const ResolvedGraph& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.circles.size(); ++i) {
    os << "circle " << i << ':';
    for (ArcId a : g.circles[i]) os << ' ' << a;
    os << '\n';
  }
  for (const auto& e : g.double_edges)
    os << "double " << e.crossing << ": v1(" << e.v1[0] << ',' << e.v1[1] << ") v2(" << e.v2[0] << ','
       << e.v2[1] << ")\n";
  return os.str();
}

}  // namespace okh
