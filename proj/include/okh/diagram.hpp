#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace okh {

using ArcId = std::int64_t;

// Ends are listed counterclockwise starting at the incoming under-strand, so
// slot 0 is incoming and slot 2 outgoing. The over-strand enters at over_in.
struct Crossing {
  std::array<ArcId, 4> ends{};
  int over_in = 3;

  int sign() const { return over_in == 3 ? 1 : -1; }
  int over_out() const { return (over_in + 2) % 4; }
  bool incoming(int slot) const { return slot == 0 || slot == over_in; }
  bool operator==(const Crossing&) const = default;
};

struct Endpoint {
  int crossing = -1;
  int slot = -1;
  bool operator==(const Endpoint&) const = default;
  auto operator<=>(const Endpoint&) const = default;
};

class LinkDiagram {
 public:
  LinkDiagram() = default;

  // Validates arc multiplicities, orientation consistency and planarity.
  LinkDiagram(std::vector<Crossing> crossings, std::vector<ArcId> loops);

  // Builds a diagram from bare PD quadruples, inferring the over-strand
  // direction at every crossing.
  static LinkDiagram from_ends(const std::vector<std::array<ArcId, 4>>& ends,
                               std::vector<ArcId> loops);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const Crossing& crossing(int i) const { return crossings_.at(static_cast<std::size_t>(i)); }
  int size() const { return static_cast<int>(crossings_.size()); }
  const std::vector<ArcId>& loops() const { return loops_; }

  // All arc ids (loops included), ascending.
  const std::vector<ArcId>& arcs() const { return arcs_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  int arc_index(ArcId a) const;
  bool has_arc(ArcId a) const;
  bool is_loop(ArcId a) const;

  Endpoint head(ArcId a) const;
  Endpoint tail(ArcId a) const;
  ArcId arc_at(Endpoint e) const { return crossing(e.crossing).ends[static_cast<std::size_t>(e.slot)]; }

  int writhe() const;
  int positive_count() const;
  int negative_count() const;

  // Components in order of their minimal arc; arcs listed along the
  // orientation starting at the minimal arc.
  const std::vector<std::vector<ArcId>>& components() const { return components_; }
  int component_count() const { return static_cast<int>(components_.size()); }
  int component_of(ArcId a) const;

  // Largest arc id in use (0 for the empty diagram).
  ArcId max_arc() const { return arcs_.empty() ? 0 : arcs_.back(); }

  bool operator==(const LinkDiagram& o) const {
    return crossings_ == o.crossings_ && loops_ == o.loops_;
  }

 private:
  void build();

  std::vector<Crossing> crossings_;
  std::vector<ArcId> loops_;
  std::vector<ArcId> arcs_;
  std::vector<Endpoint> heads_;
  std::vector<Endpoint> tails_;
  std::vector<std::vector<ArcId>> components_;
  std::vector<int> component_index_;
};

// Faces of the projection, each a cyclic list of darts (crossing, slot)
// meaning "leave that crossing through that slot". The face lies to the left.
std::vector<std::vector<Endpoint>> faces(const LinkDiagram& d);

// Connected pieces of the projection graph (crossings only), as crossing lists.
std::vector<std::vector<int>> projection_pieces(const LinkDiagram& d);

LinkDiagram mirror(const LinkDiagram& d);
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);

// Switch over and under at one crossing.
LinkDiagram crossing_change(const LinkDiagram& d, int crossing);

// Replace one crossing by its orientation-preserving smoothing.
LinkDiagram oriented_smoothing(const LinkDiagram& d, int crossing);

// Remove crossings, gluing each listed (incoming arc, outgoing arc) pair.
// Chains of glued arcs become a single arc carrying the smallest id; closed
// chains become crossingless loops.
LinkDiagram splice(const LinkDiagram& d, const std::vector<int>& removed,
                   const std::vector<std::pair<ArcId, ArcId>>& glue);

// Relabels arcs 1..N consecutively along each component.
LinkDiagram canonical_relabel(const LinkDiagram& d);

// Label-independent code; equal codes iff the diagrams are isomorphic.
std::string canonical_code(const LinkDiagram& d);
bool isomorphic(const LinkDiagram& a, const LinkDiagram& b);

// Text format: X[a,b,c,d] tokens and O (or O[a]) tokens separated by whitespace.
LinkDiagram parse_pd(std::string_view text);
// One diagram per line; blank lines and lines starting with '#' are skipped.
std::vector<LinkDiagram> parse_pd_lines(std::string_view text);
// Serializes the canonical relabeling, which parse_pd reads back exactly.
std::string serialize_pd(const LinkDiagram& d);
// The stored labels, as-is.
std::string raw_pd(const LinkDiagram& d);

struct NamedDiagram {
  std::string name;
  LinkDiagram diagram;
};

nlohmann::json to_json(const LinkDiagram& d, const std::string& name = {});
NamedDiagram diagram_from_json(const nlohmann::json& j);

}  // namespace okh
