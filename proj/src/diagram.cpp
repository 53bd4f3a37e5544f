#include "okh/diagram.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "okh/error.hpp"

namespace okh {

namespace {

std::string arc_str(ArcId a) { return std::to_string(a); }

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) {
      p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
      x = p[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

std::map<ArcId, std::vector<Endpoint>> collect_endpoints(
    const std::vector<std::array<ArcId, 4>>& ends) {
  std::map<ArcId, std::vector<Endpoint>> at;
  for (std::size_t c = 0; c < ends.size(); ++c)
    for (int s = 0; s < 4; ++s) at[ends[c][static_cast<std::size_t>(s)]].push_back({static_cast<int>(c), s});
  for (const auto& [a, v] : at)
    if (v.size() != 2)
      throw ValidationError("arc " + arc_str(a) + " appears " + std::to_string(v.size()) +
                            " times (expected 2)");
  return at;
}

Endpoint other_end(const std::vector<Endpoint>& v, Endpoint e) { return v[0] == e ? v[1] : v[0]; }

}  // namespace

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, std::vector<ArcId> loops)
    : crossings_(std::move(crossings)), loops_(std::move(loops)) {
  build();
}

void LinkDiagram::build() {
  std::vector<std::array<ArcId, 4>> ends;
  for (const auto& c : crossings_) {
    if (c.over_in != 1 && c.over_in != 3)
      throw ValidationError("over-strand must enter at slot 1 or 3");
    ends.push_back(c.ends);
  }
  auto at = collect_endpoints(ends);
  std::set<ArcId> loop_set;
  for (ArcId a : loops_) {
    if (at.count(a) || !loop_set.insert(a).second)
      throw ValidationError("loop arc " + arc_str(a) + " is not disjoint from other arcs");
  }
  arcs_.clear();
  for (const auto& [a, v] : at) arcs_.push_back(a);
  for (ArcId a : loops_) arcs_.push_back(a);
  std::sort(arcs_.begin(), arcs_.end());

  heads_.assign(arcs_.size(), Endpoint{});
  tails_.assign(arcs_.size(), Endpoint{});
  for (const auto& [a, v] : at) {
    bool in0 = crossings_[static_cast<std::size_t>(v[0].crossing)].incoming(v[0].slot);
    bool in1 = crossings_[static_cast<std::size_t>(v[1].crossing)].incoming(v[1].slot);
    if (in0 == in1) throw ValidationError("inconsistent orientation along arc " + arc_str(a));
    auto i = static_cast<std::size_t>(arc_index(a));
    heads_[i] = in0 ? v[0] : v[1];
    tails_[i] = in0 ? v[1] : v[0];
  }

  components_.clear();
  component_index_.assign(arcs_.size(), -1);
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if (component_index_[i] >= 0) continue;
    int comp = static_cast<int>(components_.size());
    components_.emplace_back();
    ArcId a = arcs_[i];
    if (is_loop(a)) {
      components_.back().push_back(a);
      component_index_[i] = comp;
      continue;
    }
    while (component_index_[static_cast<std::size_t>(arc_index(a))] < 0) {
      component_index_[static_cast<std::size_t>(arc_index(a))] = comp;
      components_.back().push_back(a);
      Endpoint h = head(a);
      a = crossing(h.crossing).ends[static_cast<std::size_t>((h.slot + 2) % 4)];
    }
  }

  auto fs = faces(*this);
  auto pieces = projection_pieces(*this);
  std::vector<int> piece_of(crossings_.size(), -1);
  for (std::size_t p = 0; p < pieces.size(); ++p)
    for (int c : pieces[p]) piece_of[static_cast<std::size_t>(c)] = static_cast<int>(p);
  std::vector<int> face_count(pieces.size(), 0);
  for (const auto& f : fs) ++face_count[static_cast<std::size_t>(piece_of[static_cast<std::size_t>(f[0].crossing)])];
  for (std::size_t p = 0; p < pieces.size(); ++p)
    if (face_count[p] != static_cast<int>(pieces[p].size()) + 2)
      throw ValidationError("diagram is not planar (face count " + std::to_string(face_count[p]) +
                            ", expected " + std::to_string(pieces[p].size() + 2) + ")");
}

int LinkDiagram::arc_index(ArcId a) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
  if (it == arcs_.end() || *it != a) throw std::out_of_range("unknown arc " + arc_str(a));
  return static_cast<int>(it - arcs_.begin());
}

bool LinkDiagram::has_arc(ArcId a) const { return std::binary_search(arcs_.begin(), arcs_.end(), a); }

bool LinkDiagram::is_loop(ArcId a) const {
  return std::find(loops_.begin(), loops_.end(), a) != loops_.end();
}

Endpoint LinkDiagram::head(ArcId a) const { return heads_[static_cast<std::size_t>(arc_index(a))]; }
Endpoint LinkDiagram::tail(ArcId a) const { return tails_[static_cast<std::size_t>(arc_index(a))]; }

int LinkDiagram::writhe() const { return positive_count() - negative_count(); }

int LinkDiagram::positive_count() const {
  return static_cast<int>(std::count_if(crossings_.begin(), crossings_.end(),
                                        [](const Crossing& c) { return c.sign() > 0; }));
}

int LinkDiagram::negative_count() const { return size() - positive_count(); }

int LinkDiagram::component_of(ArcId a) const { return component_index_[static_cast<std::size_t>(arc_index(a))]; }

LinkDiagram LinkDiagram::from_ends(const std::vector<std::array<ArcId, 4>>& ends,
                                   std::vector<ArcId> loops) {
  auto at = collect_endpoints(ends);
  std::map<ArcId, Endpoint> head;
  std::vector<int> over_in(ends.size(), 0);
  std::deque<ArcId> queue;

  auto set_head = [&](ArcId a, Endpoint e) {
    auto it = head.find(a);
    if (it != head.end()) {
      if (!(it->second == e)) throw ValidationError("inconsistent orientation along arc " + arc_str(a));
      return;
    }
    head[a] = e;
    queue.push_back(a);
  };
  auto set_over = [&](int c, int slot) {
    int& o = over_in[static_cast<std::size_t>(c)];
    if (o != 0 && o != slot)
      throw ValidationError("inconsistent orientation at crossing " + std::to_string(c));
    o = slot;
  };
  auto propagate = [&]() {
    while (!queue.empty()) {
      ArcId a = queue.front();
      queue.pop_front();
      const auto& ep = at.at(a);
      Endpoint h = head.at(a);
      Endpoint t = other_end(ep, h);
      if (h.slot == 2) throw ValidationError("inconsistent orientation along arc " + arc_str(a));
      if (t.slot == 0) throw ValidationError("inconsistent orientation along arc " + arc_str(a));
      if (h.slot == 1 || h.slot == 3) {
        set_over(h.crossing, h.slot);
        int out = (h.slot + 2) % 4;
        ArcId b = ends[static_cast<std::size_t>(h.crossing)][static_cast<std::size_t>(out)];
        set_head(b, other_end(at.at(b), {h.crossing, out}));
      }
      if (t.slot == 1 || t.slot == 3) {
        int in = (t.slot + 2) % 4;
        set_over(t.crossing, in);
        ArcId b = ends[static_cast<std::size_t>(t.crossing)][static_cast<std::size_t>(in)];
        set_head(b, {t.crossing, in});
      }
    }
  };

  for (std::size_t c = 0; c < ends.size(); ++c) {
    set_head(ends[c][0], {static_cast<int>(c), 0});
    ArcId out = ends[c][2];
    set_head(out, other_end(at.at(out), {static_cast<int>(c), 2}));
  }
  propagate();

  // Components that only pass over: orient along consecutive labels.
  for (std::size_t c = 0; c < ends.size(); ++c) {
    if (over_in[c] != 0) continue;
    std::set<ArcId> labels;
    Endpoint e{static_cast<int>(c), 1};
    for (;;) {
      ArcId a = ends[static_cast<std::size_t>(e.crossing)][static_cast<std::size_t>(e.slot)];
      if (!labels.insert(a).second) break;
      Endpoint f = other_end(at.at(a), e);
      e = {f.crossing, (f.slot + 2) % 4};
    }
    auto succ = [&](ArcId x) {
      auto it = labels.upper_bound(x);
      return it == labels.end() ? *labels.begin() : *it;
    };
    ArcId j = ends[c][1], l = ends[c][3];
    bool forward = succ(j) == l;
    bool backward = succ(l) == j;
    bool enter_at_1 = (forward && !backward) || ((forward == backward) && j <= l);
    if (enter_at_1)
      set_head(j, {static_cast<int>(c), 1});
    else
      set_head(l, {static_cast<int>(c), 3});
    propagate();
  }

  std::vector<Crossing> cs;
  for (std::size_t c = 0; c < ends.size(); ++c) cs.push_back({ends[c], over_in[c]});
  return LinkDiagram(std::move(cs), std::move(loops));
}

std::vector<std::vector<Endpoint>> faces(const LinkDiagram& d) {
  std::map<ArcId, std::vector<Endpoint>> at;
  for (int c = 0; c < d.size(); ++c)
    for (int s = 0; s < 4; ++s) at[d.crossing(c).ends[static_cast<std::size_t>(s)]].push_back({c, s});
  std::vector<std::vector<Endpoint>> out;
  std::vector<std::array<bool, 4>> seen(static_cast<std::size_t>(d.size()), {false, false, false, false});
  for (int c = 0; c < d.size(); ++c) {
    for (int s = 0; s < 4; ++s) {
      if (seen[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)]) continue;
      std::vector<Endpoint> face;
      Endpoint e{c, s};
      while (!seen[static_cast<std::size_t>(e.crossing)][static_cast<std::size_t>(e.slot)]) {
        seen[static_cast<std::size_t>(e.crossing)][static_cast<std::size_t>(e.slot)] = true;
        face.push_back(e);
        Endpoint f = other_end(at.at(d.arc_at(e)), e);
        e = {f.crossing, (f.slot + 3) % 4};
      }
      out.push_back(std::move(face));
    }
  }
  return out;
}

std::vector<std::vector<int>> projection_pieces(const LinkDiagram& d) {
  Dsu dsu(d.size());
  std::map<ArcId, int> first;
  for (int c = 0; c < d.size(); ++c)
    for (ArcId a : d.crossing(c).ends) {
      auto [it, fresh] = first.emplace(a, c);
      if (!fresh) dsu.unite(c, it->second);
    }
  std::map<int, std::vector<int>> groups;
  for (int c = 0; c < d.size(); ++c) groups[dsu.find(c)].push_back(c);
  std::vector<std::vector<int>> out;
  for (auto& [r, v] : groups) out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

LinkDiagram crossing_change(const LinkDiagram& d, int crossing) {
  auto cs = d.crossings();
  Crossing& x = cs.at(static_cast<std::size_t>(crossing));
  int s = x.over_in;
  Crossing y;
  for (int i = 0; i < 4; ++i) y.ends[static_cast<std::size_t>(i)] = x.ends[static_cast<std::size_t>((i + s) % 4)];
  y.over_in = (4 - s) % 4;
  x = y;
  return LinkDiagram(std::move(cs), d.loops());
}

LinkDiagram mirror(const LinkDiagram& d) {
  LinkDiagram out = d;
  for (int c = 0; c < d.size(); ++c) out = crossing_change(out, c);
  return out;
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
  ArcId off = a.max_arc();
  auto cs = a.crossings();
  auto loops = a.loops();
  for (auto c : b.crossings()) {
    for (auto& e : c.ends) e += off;
    cs.push_back(c);
  }
  for (ArcId l : b.loops()) loops.push_back(l + off);
  return LinkDiagram(std::move(cs), std::move(loops));
}

LinkDiagram oriented_smoothing(const LinkDiagram& d, int crossing) {
  const Crossing& x = d.crossing(crossing);
  std::vector<std::pair<ArcId, ArcId>> glue;
  if (x.sign() > 0)
    glue = {{x.ends[0], x.ends[1]}, {x.ends[3], x.ends[2]}};
  else
    glue = {{x.ends[1], x.ends[2]}, {x.ends[0], x.ends[3]}};
  return splice(d, {crossing}, glue);
}

LinkDiagram splice(const LinkDiagram& d, const std::vector<int>& removed,
                   const std::vector<std::pair<ArcId, ArcId>>& glue) {
  std::set<int> gone(removed.begin(), removed.end());
  std::map<ArcId, ArcId> next, prev;
  for (auto [u, v] : glue) {
    if (!next.emplace(u, v).second || !prev.emplace(v, u).second)
      throw MoveError("arc glued twice during splice");
  }
  std::map<ArcId, ArcId> rename;
  std::vector<ArcId> new_loops = d.loops();
  std::set<ArcId> done;
  for (ArcId a : d.arcs()) {
    if (done.count(a) || d.is_loop(a)) continue;
    // Walk back to the start of the chain, or around a cycle.
    ArcId start = a;
    bool cycle = false;
    while (prev.count(start)) {
      start = prev.at(start);
      if (start == a) {
        cycle = true;
        break;
      }
    }
    std::vector<ArcId> chain;
    ArcId cur = start;
    for (;;) {
      chain.push_back(cur);
      done.insert(cur);
      auto it = next.find(cur);
      if (it == next.end() || it->second == start) break;
      cur = it->second;
    }
    ArcId id = *std::min_element(chain.begin(), chain.end());
    for (ArcId x : chain) rename[x] = id;
    if (cycle) new_loops.push_back(id);
  }
  std::vector<Crossing> cs;
  for (int c = 0; c < d.size(); ++c) {
    if (gone.count(c)) continue;
    Crossing x = d.crossing(c);
    for (auto& e : x.ends) e = rename.at(e);
    cs.push_back(x);
  }
  std::sort(new_loops.begin(), new_loops.end());
  return LinkDiagram(std::move(cs), std::move(new_loops));
}

LinkDiagram canonical_relabel(const LinkDiagram& d) {
  std::map<ArcId, ArcId> label;
  ArcId next = 1;
  for (const auto& comp : d.components()) {
    if (d.is_loop(comp[0])) continue;
    // Start at the arc entering the first crossing the component meets, so
    // that components passing only over are re-oriented consistently.
    std::size_t start = 0;
    int best = d.size();
    for (std::size_t i = 0; i < comp.size(); ++i) {
      int c = d.head(comp[i]).crossing;
      if (c < best) {
        best = c;
        start = i;
      }
    }
    for (std::size_t k = 0; k < comp.size(); ++k) label[comp[(start + k) % comp.size()]] = next++;
  }
  std::vector<ArcId> loops;
  for (std::size_t i = 0; i < d.loops().size(); ++i) loops.push_back(next++);
  std::vector<Crossing> cs;
  for (auto x : d.crossings()) {
    for (auto& e : x.ends) e = label.at(e);
    cs.push_back(x);
  }
  return LinkDiagram(std::move(cs), std::move(loops));
}

std::string canonical_code(const LinkDiagram& d) {
  std::vector<std::string> codes;
  for (const auto& piece : projection_pieces(d)) {
    std::string best;
    for (int start : piece) {
      std::map<ArcId, int> label;
      std::map<int, int> order;
      std::vector<int> seq{start};
      order[start] = 0;
      std::ostringstream os;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        const Crossing& x = d.crossing(seq[i]);
        os << '(';
        for (int s = 0; s < 4; ++s) {
          ArcId a = x.ends[static_cast<std::size_t>(s)];
          if (!label.count(a)) {
            int l = static_cast<int>(label.size());
            label[a] = l;
            for (Endpoint e : {d.head(a), d.tail(a)})
              if (!order.count(e.crossing)) {
                order[e.crossing] = static_cast<int>(seq.size());
                seq.push_back(e.crossing);
              }
          }
          os << label[a] << ',';
        }
        os << x.over_in << ')';
      }
      std::string code = os.str();
      if (best.empty() || code < best) best = code;
    }
    codes.push_back(best);
  }
  std::sort(codes.begin(), codes.end());
  std::string out;
  for (const auto& c : codes) out += c + "|";
  out += "O" + std::to_string(d.loops().size());
  return out;
}

bool isomorphic(const LinkDiagram& a, const LinkDiagram& b) {
  return a.size() == b.size() && a.loops().size() == b.loops().size() &&
         canonical_code(a) == canonical_code(b);
}

}  // namespace okh
