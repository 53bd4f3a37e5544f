#include "okh/moves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "okh/error.hpp"

namespace okh {

namespace {

// A crossing described geometrically: four arcs in counterclockwise order,
// which of them are incoming, and which pair (0/2 or 1/3) passes over.
struct Geometric {
  std::array<ArcId, 4> arc{};
  std::array<bool, 4> incoming{};
  int over_parity = 1;
};

Crossing realize(const Geometric& g) {
  int under = 1 - g.over_parity;
  int u = g.incoming[static_cast<std::size_t>(under)] ? under : under + 2;
  int o = g.incoming[static_cast<std::size_t>(g.over_parity)] ? g.over_parity : g.over_parity + 2;
  Crossing c;
  for (int i = 0; i < 4; ++i) c.ends[static_cast<std::size_t>(i)] = g.arc[static_cast<std::size_t>((u + i) % 4)];
  c.over_in = ((o - u) % 4 + 4) % 4;
  return c;
}

Endpoint other_end(const LinkDiagram& d, ArcId a, Endpoint e) {
  Endpoint h = d.head(a);
  return h == e ? d.tail(a) : h;
}

void set_slot(std::vector<Crossing>& cs, Endpoint e, ArcId a) {
  cs[static_cast<std::size_t>(e.crossing)].ends[static_cast<std::size_t>(e.slot)] = a;
}

std::vector<Endpoint> face_of(const LinkDiagram& d, Endpoint dart) {
  for (auto& f : faces(d))
    if (std::find(f.begin(), f.end(), dart) != f.end()) return f;
  throw MoveError("no face through the requested dart");
}

// Loop arc of a monogon at crossing x, or 0.
ArcId monogon_arc(const LinkDiagram& d, int x) {
  const Crossing& c = d.crossing(x);
  for (int s = 0; s < 4; ++s) {
    ArcId a = c.ends[static_cast<std::size_t>(s)];
    if (c.ends[static_cast<std::size_t>((s + 1) % 4)] == a) return a;
  }
  return 0;
}

std::vector<std::pair<ArcId, ArcId>> through_glue(const LinkDiagram& d, int x) {
  const Crossing& c = d.crossing(x);
  return {{c.ends[0], c.ends[2]},
          {c.ends[static_cast<std::size_t>(c.over_in)], c.ends[static_cast<std::size_t>(c.over_out())]}};
}

LinkDiagram r1_apply(const LinkDiagram& d, const MoveSpec& mv) {
  if (!d.has_arc(mv.arc)) throw MoveError("R1: no arc " + std::to_string(mv.arc));
  if ((mv.sign != 1 && mv.sign != -1) || (mv.side != 1 && mv.side != -1))
    throw MoveError("R1: sign and side must be +1 or -1");
  bool loop = d.is_loop(mv.arc);
  ArcId base = d.max_arc();
  ArcId a_in = mv.arc, ell = base + 1, a_out = loop ? mv.arc : base + 2;
  // Positions counterclockwise: strand enters at 0, leaves at 2, loops back
  // to 3 (left) or 1 (right) and leaves through the remaining position.
  int back = mv.side > 0 ? 3 : 1;
  int exit = mv.side > 0 ? 1 : 3;
  Geometric g;
  g.arc[0] = a_in;
  g.arc[2] = ell;
  g.arc[static_cast<std::size_t>(back)] = ell;
  g.arc[static_cast<std::size_t>(exit)] = a_out;
  g.incoming = {true, false, false, false};
  g.incoming[static_cast<std::size_t>(back)] = true;
  bool under_first = mv.sign == mv.side;
  g.over_parity = under_first ? 1 : 0;

  auto cs = d.crossings();
  std::vector<ArcId> loops;
  if (loop) {
    for (ArcId l : d.loops())
      if (l != mv.arc) loops.push_back(l);
  } else {
    loops = d.loops();
    set_slot(cs, d.head(mv.arc), a_out);
  }
  cs.push_back(realize(g));
  LinkDiagram out(std::move(cs), std::move(loops));
  if (out.crossings().back().sign() != mv.sign) throw MoveError("R1: internal sign mismatch");
  return out;
}

LinkDiagram r1_undo(const LinkDiagram& d, const MoveSpec& mv) {
  int x = mv.crossings[0];
  if (x < 0 || x >= d.size()) throw MoveError("R1 undo: no crossing " + std::to_string(x));
  if (monogon_arc(d, x) == 0) throw MoveError("R1 undo: crossing " + std::to_string(x) + " has no monogon");
  return splice(d, {x}, through_glue(d, x));
}

LinkDiagram r2_apply(const LinkDiagram& d, const MoveSpec& mv) {
  ArcId e1 = mv.arc, e2 = mv.arc2;
  if (e1 == e2 || !d.has_arc(e1) || !d.has_arc(e2) || d.is_loop(e1) || d.is_loop(e2))
    throw MoveError("R2: arcs must be two distinct arcs meeting crossings");
  Endpoint d1 = mv.side > 0 ? d.tail(e1) : d.head(e1);
  auto face = face_of(d, d1);
  int n1 = 0, n2 = 0;
  Endpoint d2{};
  for (Endpoint e : face) {
    ArcId a = d.arc_at(e);
    if (a == e1) ++n1;
    if (a == e2) {
      ++n2;
      d2 = e;
    }
  }
  if (n1 != 1 || n2 != 1) throw MoveError("R2: arcs do not share the face exactly once");
  Endpoint q1 = other_end(d, e1, d1), q2 = other_end(d, e2, d2);
  bool fwd1 = d.tail(e1) == d1, fwd2 = d.tail(e2) == d2;

  ArcId base = d.max_arc();
  std::array<ArcId, 3> s1{}, s2{};
  int keep1 = fwd1 ? 0 : 2, keep2 = fwd2 ? 0 : 2;
  ArcId next = base;
  for (int i = 0; i < 3; ++i) s1[static_cast<std::size_t>(i)] = i == keep1 ? e1 : ++next;
  for (int i = 0; i < 3; ++i) s2[static_cast<std::size_t>(i)] = i == keep2 ? e2 : ++next;

  // x: (e1a, e2b, e1b, e2c), y: (e1c, e2a, e1b, e2b), counterclockwise.
  Geometric x, y;
  x.arc = {s1[0], s2[1], s1[1], s2[2]};
  y.arc = {s1[2], s2[0], s1[1], s2[1]};
  x.incoming = {fwd1, fwd2, !fwd1, !fwd2};
  y.incoming = {!fwd1, fwd2, fwd1, !fwd2};
  x.over_parity = y.over_parity = mv.over_first ? 0 : 1;

  auto cs = d.crossings();
  set_slot(cs, d1, s1[0]);
  set_slot(cs, q1, s1[2]);
  set_slot(cs, d2, s2[0]);
  set_slot(cs, q2, s2[2]);
  cs.push_back(realize(x));
  cs.push_back(realize(y));
  return LinkDiagram(std::move(cs), d.loops());
}

// Bigon darts for crossings x and y, if they bound one with a valid R2 pattern.
bool r2_bigon(const LinkDiagram& d, int x, int y) {
  if (x == y || x < 0 || y < 0 || x >= d.size() || y >= d.size()) return false;
  for (const auto& f : faces(d)) {
    if (f.size() != 2) continue;
    std::set<int> cs{f[0].crossing, f[1].crossing};
    if (cs != std::set<int>{x, y}) continue;
    // The edge leaving f[0] runs along one strand; it must be on the same
    // level (over or under) at both of its ends.
    ArcId a = d.arc_at(f[0]);
    Endpoint far = other_end(d, a, f[0]);
    if ((f[0].slot % 2) == (far.slot % 2)) return true;
  }
  return false;
}

LinkDiagram r2_undo(const LinkDiagram& d, const MoveSpec& mv) {
  int x = mv.crossings[0], y = mv.crossings[1];
  if (!r2_bigon(d, x, y)) throw MoveError("R2 undo: crossings do not bound a removable bigon");
  auto glue = through_glue(d, x);
  auto gy = through_glue(d, y);
  glue.insert(glue.end(), gy.begin(), gy.end());
  return splice(d, {x, y}, glue);
}

struct Triangle {
  std::array<int, 3> v{};       // crossings in face order
  std::array<int, 3> prev{};    // slot toward the previous vertex
  std::array<ArcId, 3> edge{};  // edge i joins v[i] to v[i+1]
};

bool triangle_of(const LinkDiagram& d, const std::vector<Endpoint>& f, Triangle& t) {
  if (f.size() != 3) return false;
  std::set<int> cs;
  for (int i = 0; i < 3; ++i) {
    const Endpoint& e = f[static_cast<std::size_t>(i)];
    t.v[static_cast<std::size_t>(i)] = e.crossing;
    t.prev[static_cast<std::size_t>(i)] = (e.slot + 1) % 4;
    t.edge[static_cast<std::size_t>(i)] = d.arc_at(e);
    cs.insert(e.crossing);
  }
  return cs.size() == 3;
}

// Lines: 0 = L1 (through v1, v2), 1 = L2 (v0, v1), 2 = L3 (v0, v2).
// Compass directions indexed by angle/45 degrees: E=0, NE=1, NW=3, W=4, SW=5, SE=7.
// Offsets from the "previous" slot at each vertex mapped to compass directions.
constexpr int kDir[3][4] = {{3, 5, 7, 1}, {5, 0, 1, 4}, {0, 3, 4, 7}};
constexpr int kLineOfDir[8] = {0, 1, -1, 2, 0, 1, -1, 2};

bool r3_valid(const Triangle& t) {
  // A valid move needs a line lying on top at both of its crossings.
  int over[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 2; ++k)
      if ((t.prev[static_cast<std::size_t>(i)] + k) % 2 == 1) ++over[kLineOfDir[kDir[i][k]]];
  return over[0] == 2 || over[1] == 2 || over[2] == 2;
}

LinkDiagram r3_flip(const LinkDiagram& d, const Triangle& t) {
  std::map<int, ArcId> ext;        // compass direction -> external arc
  std::map<int, bool> ext_in;      // compass direction -> incoming at its old crossing
  int over_line[3] = {-1, -1, -1}; // per vertex: which line is on top
  for (int i = 0; i < 3; ++i) {
    const Crossing& c = d.crossing(t.v[static_cast<std::size_t>(i)]);
    for (int k = 0; k < 4; ++k) {
      int slot = (t.prev[static_cast<std::size_t>(i)] + k) % 4;
      int dir = kDir[i][k];
      if (k == 1 || k == 2) {
        ext[dir] = c.ends[static_cast<std::size_t>(slot)];
        ext_in[dir] = c.incoming(slot);
      }
      if (slot % 2 == 1) over_line[i] = kLineOfDir[dir];
    }
  }
  // Line orientation: the compass direction the line arrives from.
  int from[3] = {ext_in[0] ? 0 : 4, ext_in[5] ? 5 : 1, ext_in[3] ? 3 : 7};
  ArcId l1 = t.edge[1], l2 = t.edge[0], l3 = t.edge[2];

  // New vertices keep the crossing ids of the old ones on the same line pair.
  struct Slot {
    int dir;
    ArcId arc;
  };
  auto build = [&](std::array<Slot, 4> slots, int over) {
    Geometric g;
    for (int i = 0; i < 4; ++i) {
      const Slot& s = slots[static_cast<std::size_t>(i)];
      g.arc[static_cast<std::size_t>(i)] = s.arc;
      int line = kLineOfDir[s.dir];
      g.incoming[static_cast<std::size_t>(i)] = from[line] == s.dir;
    }
    for (int i = 0; i < 4; ++i)
      if (kLineOfDir[slots[static_cast<std::size_t>(i)].dir] == over) g.over_parity = i % 2;
    return realize(g);
  };
  Crossing p = build({Slot{1, ext[1]}, Slot{3, ext[3]}, Slot{5, l2}, Slot{7, l3}}, over_line[0]);
  Crossing q = build({Slot{0, l1}, Slot{1, l2}, Slot{4, ext[4]}, Slot{5, ext[5]}}, over_line[1]);
  Crossing r = build({Slot{0, ext[0]}, Slot{3, l3}, Slot{4, l1}, Slot{7, ext[7]}}, over_line[2]);
  auto cs = d.crossings();
  cs[static_cast<std::size_t>(t.v[0])] = p;
  cs[static_cast<std::size_t>(t.v[1])] = q;
  cs[static_cast<std::size_t>(t.v[2])] = r;
  return LinkDiagram(std::move(cs), d.loops());
}

bool find_triangle(const LinkDiagram& d, const MoveSpec& mv, Triangle& t) {
  std::set<int> want(mv.crossings.begin(), mv.crossings.end());
  for (const auto& f : faces(d)) {
    Triangle cand;
    if (!triangle_of(d, f, cand)) continue;
    if (std::set<int>(cand.v.begin(), cand.v.end()) != want) continue;
    if (mv.arc != 0 && std::find(cand.edge.begin(), cand.edge.end(), mv.arc) == cand.edge.end()) continue;
    if (!r3_valid(cand)) continue;
    t = cand;
    return true;
  }
  return false;
}

LinkDiagram r3_apply(const LinkDiagram& d, const MoveSpec& mv) {
  Triangle t;
  if (!find_triangle(d, mv, t)) throw MoveError("R3: no valid triangular face on the given crossings");
  return r3_flip(d, t);
}

}  // namespace

std::optional<CurlSite> curl_at(const LinkDiagram& d, int crossing) {
  if (crossing < 0 || crossing >= d.size()) return std::nullopt;
  ArcId ell = monogon_arc(d, crossing);
  if (ell == 0) return std::nullopt;
  const Crossing& c = d.crossing(crossing);
  CurlSite site;
  site.crossing = crossing;
  site.loop = ell;
  site.sign = c.sign();
  int loop_in = -1, strand_in = -1;
  for (int s = 0; s < 4; ++s) {
    ArcId a = c.ends[static_cast<std::size_t>(s)];
    if (a == ell) {
      if (c.incoming(s)) loop_in = s;
    } else if (c.incoming(s)) {
      strand_in = s;
      site.in = a;
    } else {
      site.out = a;
    }
  }
  site.side = ((loop_in - strand_in) % 4 + 4) % 4 == 3 ? 1 : -1;
  return site;
}

std::string MoveSpec::describe() const {
  std::ostringstream os;
  const char* k = kind == MoveKind::R1 ? "R1" : kind == MoveKind::R2 ? "R2" : "R3";
  os << k << (direction == MoveDirection::Apply ? "" : "-undo");
  if (kind == MoveKind::R1 && direction == MoveDirection::Apply)
    os << (sign > 0 ? "+" : "-") << " arc=" << arc << " side=" << side;
  else if (kind == MoveKind::R2 && direction == MoveDirection::Apply)
    os << " arcs=" << arc << "," << arc2 << " side=" << side << (over_first ? " over" : " under");
  else if (kind == MoveKind::R1)
    os << " crossing=" << crossings[0];
  else if (kind == MoveKind::R2)
    os << " crossings=" << crossings[0] << "," << crossings[1];
  else
    os << " crossings=" << crossings[0] << "," << crossings[1] << "," << crossings[2];
  return os.str();
}

LinkDiagram apply_move(const LinkDiagram& d, const MoveSpec& mv) {
  switch (mv.kind) {
    case MoveKind::R1:
      return mv.direction == MoveDirection::Apply ? r1_apply(d, mv) : r1_undo(d, mv);
    case MoveKind::R2:
      return mv.direction == MoveDirection::Apply ? r2_apply(d, mv) : r2_undo(d, mv);
    case MoveKind::R3:
      return r3_apply(d, mv);
  }
  throw MoveError("unknown move");
}

MoveSpec inverse_move(const LinkDiagram& d, const MoveSpec& mv) {
  MoveSpec inv;
  inv.kind = mv.kind;
  if (mv.kind == MoveKind::R3) {
    Triangle t;
    if (!find_triangle(d, mv, t)) throw MoveError("R3: no valid triangular face on the given crossings");
    inv.crossings = mv.crossings;
    inv.arc = t.edge[0];
    return inv;
  }
  if (mv.direction != MoveDirection::Apply) throw MoveError("inverse of an undo move is not tracked");
  inv.direction = MoveDirection::Undo;
  if (mv.kind == MoveKind::R1) {
    inv.crossings = {d.size(), -1, -1};
  } else {
    inv.crossings = {d.size(), d.size() + 1, -1};
  }
  return inv;
}

std::vector<MoveSpec> available_moves(const LinkDiagram& d, int max_crossings) {
  std::vector<MoveSpec> out;
  if (d.size() + 1 <= max_crossings) {
    for (ArcId a : d.arcs())
      for (int sign : {1, -1})
        for (int side : {1, -1}) {
          MoveSpec m;
          m.kind = MoveKind::R1;
          m.arc = a;
          m.sign = sign;
          m.side = side;
          out.push_back(m);
        }
  }
  for (int x = 0; x < d.size(); ++x)
    if (monogon_arc(d, x) != 0) {
      MoveSpec m;
      m.kind = MoveKind::R1;
      m.direction = MoveDirection::Undo;
      m.crossings = {x, -1, -1};
      out.push_back(m);
    }
  auto fs = faces(d);
  if (d.size() + 2 <= max_crossings) {
    for (const auto& f : fs) {
      std::map<ArcId, int> count;
      for (Endpoint e : f) ++count[d.arc_at(e)];
      for (Endpoint e1 : f)
        for (Endpoint e2 : f) {
          ArcId a1 = d.arc_at(e1), a2 = d.arc_at(e2);
          if (a1 == a2 || count[a1] != 1 || count[a2] != 1) continue;
          for (bool over : {true, false}) {
            MoveSpec m;
            m.kind = MoveKind::R2;
            m.arc = a1;
            m.arc2 = a2;
            m.side = d.tail(a1) == e1 ? 1 : -1;
            m.over_first = over;
            out.push_back(m);
          }
        }
    }
  }
  std::set<std::pair<int, int>> bigons;
  for (const auto& f : fs) {
    if (f.size() != 2) continue;
    int x = std::min(f[0].crossing, f[1].crossing), y = std::max(f[0].crossing, f[1].crossing);
    if (r2_bigon(d, x, y) && bigons.insert({x, y}).second) {
      MoveSpec m;
      m.kind = MoveKind::R2;
      m.direction = MoveDirection::Undo;
      m.crossings = {x, y, -1};
      out.push_back(m);
    }
  }
  for (const auto& f : fs) {
    Triangle t;
    if (!triangle_of(d, f, t) || !r3_valid(t)) continue;
    MoveSpec m;
    m.kind = MoveKind::R3;
    m.crossings = t.v;
    m.arc = t.edge[0];
    out.push_back(m);
  }
  return out;
}

LinkDiagram random_moves(const LinkDiagram& d, int count, std::mt19937_64& rng, int max_crossings,
                         std::vector<MoveSpec>* log) {
  LinkDiagram cur = d;
  for (int i = 0; i < count; ++i) {
    auto moves = available_moves(cur, max_crossings);
    std::map<int, std::vector<MoveSpec>> by_kind;
    for (const auto& m : moves) {
      int key = static_cast<int>(m.kind) * 2 + static_cast<int>(m.direction);
      by_kind[key].push_back(m);
    }
    if (by_kind.empty()) break;
    std::vector<int> keys;
    for (const auto& [k, v] : by_kind) keys.push_back(k);
    int key = keys[std::uniform_int_distribution<std::size_t>(0, keys.size() - 1)(rng)];
    const auto& pool = by_kind[key];
    const MoveSpec& m = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    cur = apply_move(cur, m);
    if (log) log->push_back(m);
  }
  return cur;
}

}  // namespace okh
