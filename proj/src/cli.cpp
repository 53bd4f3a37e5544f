#include "okh/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "okh/bracket.hpp"
#include "okh/complex.hpp"
#include "okh/error.hpp"
#include "okh/homology.hpp"
#include "okh/moves.hpp"
#include "okh/parallel.hpp"
#include "okh/verify.hpp"

namespace okh {

namespace {

std::vector<CorpusEntry> inputs(const RunConfig& cfg) {
  if (!cfg.pd.empty() && !cfg.file.empty()) throw CLI::ValidationError("--pd and --file are exclusive");
  if (!cfg.pd.empty()) return {{"", parse_pd(cfg.pd), std::nullopt}};
  if (!cfg.file.empty()) return load_corpus(cfg.file);
  throw CLI::ValidationError("one of --pd or --file is required");
}

void header(std::ostream& out, const std::vector<CorpusEntry>& in, const CorpusEntry& e) {
  if (in.size() > 1 || !e.name.empty()) out << "# " << e.name << '\n';
}

std::string signed_int(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

std::string group_text(const HomologyGroup& g) {
  std::string s;
  if (g.free > 0) s = g.free == 1 ? "Z" : "Z^" + std::to_string(g.free);
  for (auto t : g.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
  return s.empty() ? "0" : s;
}

// Descending height, then descending q: the order of the Poincare polynomial.
void print_table(std::ostream& out, const BigradedHomology& h) {
  if (h.ring == Ring::Graded) {
    for (auto it = h.table.rbegin(); it != h.table.rend(); ++it)
      if (!it->second.zero())
        out << '(' << it->first.first << ", " << signed_int(it->first.second) << ", " << group_text(it->second) << ")\n";
  } else {
    for (auto it = h.by_height.rbegin(); it != h.by_height.rend(); ++it)
      if (!it->second.zero()) out << '(' << it->first << ", " << group_text(it->second) << ")\n";
  }
}

std::string torsion_text(const BigradedHomology& h) {
  std::ostringstream os;
  bool any = false;
  for (auto it = h.table.rbegin(); it != h.table.rend(); ++it)
    for (auto t : it->second.torsion) {
      os << (any ? ", " : "") << "Z/" << t << " at (" << it->first.first << ", " << signed_int(it->first.second) << ')';
      any = true;
    }
  return any ? os.str() : "none";
}

int cmd_jones(const RunConfig& cfg, std::ostream& out) {
  auto in = inputs(cfg);
  nlohmann::json all = nlohmann::json::array();
  bool agree = true;
  for (const auto& e : in) {
    LaurentPoly b = bracket_state_sum(e.diagram, cfg.jobs);
    std::optional<LaurentPoly> k;
    if (cfg.check_oracle) {
      k = jones_via_kauffman(e.diagram);
      agree = agree && *k == b;
    }
    if (cfg.format == OutputFormat::Structured) {
      nlohmann::json j{{"bracket", b.to_json()}, {"text", b.to_string()}};
      if (!e.name.empty()) j["name"] = e.name;
      if (k) {
        j["kauffman"] = k->to_json();
        j["agree"] = *k == b;
      }
      all.push_back(j);
      continue;
    }
    header(out, in, e);
    out << b.to_string() << '\n';
    if (k) out << "kauffman: " << k->to_string() << '\n' << "oracle: " << (*k == b ? "agree" : "DIFFER") << '\n';
  }
  if (cfg.format == OutputFormat::Structured) out << (in.size() == 1 ? all[0] : all).dump(2) << '\n';
  return agree ? kExitOk : kExitVerification;
}

int cmd_homology(const RunConfig& cfg, Ring ring, std::ostream& out) {
  auto in = inputs(cfg);
  nlohmann::json all = nlohmann::json::array();
  bool ok = true;
  for (const auto& e : in) {
    BuildOptions bo;
    bo.jobs = cfg.jobs;
    bo.fault = e.fault;
    ChainComplex K = build_complex(e.diagram, ring, bo);
    BigradedHomology h = homology(K, cfg.jobs);
    nlohmann::json j = h.to_json();
    if (!e.name.empty()) j["name"] = e.name;

    std::optional<LaurentPoly> chi, bracket;
    if (ring == Ring::Graded) {
      chi = graded_euler_characteristic(h);
      bracket = bracket_state_sum(e.diagram, cfg.jobs);
      ok = ok && *chi == *bracket;
      j["euler"] = chi->to_json();
      j["bracket"] = bracket->to_json();
      j["euler_matches_bracket"] = *chi == *bracket;
    }
    std::optional<CanonicalReport> can;
    std::optional<SpectralReport> spec;
    if (ring == Ring::Lee) {
      can = lee_canonical_classes(e.diagram, &K);
      j["canonical_classes"] = {{"count", can->classes.size()}, {"cycles", can->all_cycles}, {"independent", can->independent}};
      if (cfg.spectral) {
        spec = spectral_sequence_report(khovanov_homology(e.diagram, cfg.jobs), h);
        j["spectral"] = {{"e2_total", spec->e2_total}, {"einf_total", spec->einf_total}, {"deficit", spec->deficit},
                         {"consistent", spec->consistent}};
      }
    }

    if (cfg.format == OutputFormat::Structured) {
      all.push_back(j);
      continue;
    }
    header(out, in, e);
    if (cfg.format == OutputFormat::Poincare) {
      out << h.poincare() << '\n';
      continue;
    }
    print_table(out, h);
    if (ring == Ring::Graded) {
      out << "poincare: " << h.poincare() << '\n';
      out << "torsion: " << torsion_text(h) << '\n';
      out << "euler: " << chi->to_string() << (*chi == *bracket ? " = " : " != ") << "bracket " << bracket->to_string()
          << '\n';
    } else {
      out << "total rank " << h.total_free() << " over Z[1/2]" << '\n';
      out << can->to_string() << '\n';
      if (spec) out << spec->to_string() << '\n';
    }
  }
  if (cfg.format == OutputFormat::Structured) out << (in.size() == 1 ? all[0] : all).dump(2) << '\n';
  return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  auto in = inputs(cfg);
  std::vector<DiagramReport> reports(in.size());
  // One diagram per worker; each diagram runs single-threaded.
  parallel_for(in.size(), cfg.jobs, [&](std::size_t i) {
    VerifyOptions vo;
    vo.moves = cfg.moves;
    vo.variants = cfg.variants;
    vo.seed = cfg.seed + i;
    vo.r1 = cfg.r1;
    vo.jobs = 1;
    reports[i] = verify_diagram(in[i], vo);
  });
  std::size_t passed = 0;
  nlohmann::json all = nlohmann::json::array();
  for (const auto& r : reports) {
    passed += r.pass();
    if (cfg.format == OutputFormat::Structured) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : r.checks) checks.push_back({{"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
      all.push_back({{"name", r.name}, {"pass", r.pass()}, {"checks", checks}});
      continue;
    }
    out << (r.pass() ? "PASS " : "FAIL ") << r.name << '\n';
    for (const auto& c : r.checks)
      if (!c.pass || cfg.format == OutputFormat::Table)
        out << "  " << (c.pass ? "ok   " : "FAIL ") << c.check << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
  }
  if (cfg.format == OutputFormat::Structured)
    out << nlohmann::json{{"diagrams", all}, {"passed", passed}, {"total", reports.size()}}.dump(2) << '\n';
  else
    out << passed << '/' << reports.size() << " diagrams passed\n";
  return passed == reports.size() ? kExitOk : kExitVerification;
}

int cmd_dump(const RunConfig& cfg, std::ostream& out) {
  auto in = inputs(cfg);
  nlohmann::json all = nlohmann::json::array();
  for (const auto& e : in) {
    BuildOptions bo;
    bo.jobs = cfg.jobs;
    bo.fault = e.fault;
    ChainComplex K = build_complex(e.diagram, cfg.ring, bo);
    if (cfg.format == OutputFormat::Structured) {
      nlohmann::json j = complex_to_json(K);
      if (!e.name.empty()) j["name"] = e.name;
      all.push_back(j);
      continue;
    }
    header(out, in, e);
    out << complex_to_text(K);
  }
  if (cfg.format == OutputFormat::Structured) out << (in.size() == 1 ? all[0] : all).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "jones") return cmd_jones(cfg, out);
    if (cfg.command == "homology") return cmd_homology(cfg, cfg.ring, out);
    if (cfg.command == "lee") return cmd_homology(cfg, Ring::Lee, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "dump-complex") return cmd_dump(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kExitUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "invalid diagram: " << e.what() << '\n';
    return kExitValidation;
  } catch (const MoveError& e) {
    err << "invalid move: " << e.what() << '\n';
    return kExitValidation;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const SolverError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Khovanov-type homology of oriented link diagrams"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string ring = "graded", format = "table";

  auto input = [&](CLI::App* sub) {
    sub->add_option("--pd", cfg.pd, "inline PD code, e.g. \"X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\"");
    sub->add_option("--file", cfg.file, "JSON corpus or text file with one PD code per line");
    sub->add_option("--format", format, "table | structured | poincare")
        ->check(CLI::IsMember({"table", "structured", "poincare"}));
    sub->add_option("--jobs", cfg.jobs, "worker threads (0: hardware concurrency)");
  };
  auto* jones = app.add_subcommand("jones", "oriented bracket polynomial");
  input(jones);
  jones->add_flag("--check-oracle", cfg.check_oracle, "also evaluate the Kauffman bracket oracle");
  auto* hom = app.add_subcommand("homology", "bigraded homology table");
  input(hom);
  hom->add_option("--ring", ring, "graded | lee")->check(CLI::IsMember({"graded", "lee"}));
  auto* lee = app.add_subcommand("lee", "Lee homology over Z[1/2]");
  input(lee);
  lee->add_flag("--spectral", cfg.spectral, "compare ranks with the graded homology");
  auto* ver = app.add_subcommand("verify", "property checks on every diagram of a corpus");
  input(ver);
  ver->add_option("--moves", cfg.moves, "moves per generated sequence")->check(CLI::NonNegativeNumber);
  ver->add_option("--variants", cfg.variants, "move sequences per diagram")->check(CLI::NonNegativeNumber);
  ver->add_option("--seed", cfg.seed, "seed for move sequences");
  ver->add_flag("!--no-r1", cfg.r1, "skip the R1 chain identities");
  auto* dump = app.add_subcommand("dump-complex", "chain complex with bases and differentials");
  input(dump);
  dump->add_option("--ring", ring, "graded | lee")->check(CLI::IsMember({"graded", "lee"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.ring = ring == "lee" ? Ring::Lee : Ring::Graded;
  cfg.format = format == "structured" ? OutputFormat::Structured
               : format == "poincare" ? OutputFormat::Poincare
                                      : OutputFormat::Table;
  return run_command(cfg, out, err);
}

}  // namespace okh
