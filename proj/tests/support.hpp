#pragma once

#include <random>
#include <string>
#include <vector>

#include "okh/diagram.hpp"
#include "okh/moves.hpp"
#include "okh/verify.hpp"
#include "oracles.hpp"

namespace testing {

inline std::string corpus_path(const std::string& file) { return std::string(OKH_SOURCE_DIR) + "/corpus/" + file; }

inline std::vector<okh::CorpusEntry> knots() { return okh::load_corpus(corpus_path("knots.json")); }

inline std::vector<okh::CorpusEntry> full_corpus() {
  auto all = knots();
  for (auto& e : okh::load_corpus(corpus_path("generated.json"))) all.push_back(std::move(e));
  return all;
}

inline okh::LinkDiagram knot(const std::string& name) {
  for (auto& e : knots())
    if (e.name == name) return e.diagram;
  throw std::invalid_argument("no corpus entry " + name);
}

inline std::vector<oracle::PdCrossing> to_oracle(const okh::LinkDiagram& d) {
  std::vector<oracle::PdCrossing> x;
  for (const auto& c : d.crossings()) x.push_back({c.ends, c.sign()});
  return x;
}

// Random diagram: a knot-table entry pushed through a few random moves.
inline okh::LinkDiagram random_diagram(std::mt19937_64& rng, int max_crossings, int moves = 5) {
  static const std::vector<okh::CorpusEntry> bases = knots();
  std::vector<const okh::CorpusEntry*> small;
  for (const auto& e : bases)
    if (e.diagram.size() <= max_crossings) small.push_back(&e);
  const auto* base = small[rng() % small.size()];
  return okh::random_moves(base->diagram, moves, rng, max_crossings);
}

}  // namespace testing
