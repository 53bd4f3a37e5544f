// Writes the generated corpus: random Reidemeister sequences applied to the
// knot table. With --check, compares against an existing file instead.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "okh/moves.hpp"
#include "okh/verify.hpp"

namespace {

std::string generate(const std::vector<okh::CorpusEntry>& bases, std::uint64_t seed, int count, int max_crossings) {
  std::mt19937_64 rng(seed);
  std::ostringstream os;
  os << "{\n  \"seed\": " << seed << ",\n  \"diagrams\": [\n";
  for (int i = 0; i < count; ++i) {
    const auto& base = bases[static_cast<std::size_t>(i) % bases.size()];
    int moves = 3 + static_cast<int>(rng() % 6);
    okh::LinkDiagram d = okh::random_moves(base.diagram, moves, rng, max_crossings);
    char name[16];
    std::snprintf(name, sizeof name, "gen-%02d", i + 1);
    nlohmann::json j = okh::to_json(d, name);
    j["source"] = base.name;
    j["moves"] = moves;
    os << "    " << j.dump() << (i + 1 < count ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the random-move corpus"};
  std::string knots = "corpus/knots.json";
  std::string out;
  std::string check;
  std::uint64_t seed = 20261017;
  int count = 20;
  int max_crossings = 10;
  app.add_option("--knots", knots, "base diagrams")->check(CLI::ExistingFile);
  app.add_option("--seed", seed);
  app.add_option("--count", count)->check(CLI::PositiveNumber);
  app.add_option("--max-crossings", max_crossings);
  auto* out_opt = app.add_option("--out", out, "output file (default stdout)");
  app.add_option("--check", check, "compare with this file")->check(CLI::ExistingFile)->excludes(out_opt);
  CLI11_PARSE(app, argc, argv);

  std::vector<okh::CorpusEntry> bases;
  for (auto& e : okh::load_corpus(knots))
    if (e.diagram.size() > 0) bases.push_back(std::move(e));
  if (bases.empty()) {
    std::cerr << "no base diagrams in " << knots << "\n";
    return 1;
  }
  std::string text = generate(bases, seed, count, max_crossings);

  if (!check.empty()) {
    std::ifstream in(check);
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str() != text) {
      std::cerr << check << " differs from the regenerated corpus\n";
      return 1;
    }
    std::cout << check << " reproduced\n";
    return 0;
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out) << text;
  }
  return 0;
}
