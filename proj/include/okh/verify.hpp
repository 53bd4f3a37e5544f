#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "okh/complex.hpp"
#include "okh/diagram.hpp"

namespace okh {

struct CorpusEntry {
  std::string name;
  LinkDiagram diagram;
  std::optional<FaultInjection> fault;  // "corrupt_edge": {"state": [...], "crossing": c}
};

// Accepts a single entry, an array of entries, or {"diagrams": [...]}.
std::vector<CorpusEntry> corpus_from_json(const nlohmann::json& j);
// .json files as above; anything else is read as one PD code per line.
std::vector<CorpusEntry> load_corpus(const std::string& path);
nlohmann::json corpus_entry_to_json(const CorpusEntry& e);

struct VerifyOptions {
  int variants = 3;       // diagrams related by move sequences, besides the input
  int moves = 6;          // moves per sequence
  std::uint64_t seed = 1;
  int max_crossings = 10;
  bool r1 = true;         // chain-level R1 identities on curls added to the diagram
  int jobs = 0;
};

struct CheckResult {
  std::string check;
  bool pass = false;
  std::string detail;
};

struct DiagramReport {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass() const;
};

// d^2 = 0 in both rings, Euler characteristic = bracket = Kauffman oracle,
// homology of move-related diagrams, Lee rank and canonical classes, R1
// chain identities.
DiagramReport verify_diagram(const CorpusEntry& e, const VerifyOptions& opts);

}  // namespace okh
