#include "okh/verify.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "okh/bracket.hpp"
#include "okh/error.hpp"
#include "okh/homology.hpp"
#include "okh/moves.hpp"

namespace okh {

std::vector<CorpusEntry> corpus_from_json(const nlohmann::json& j) {
  std::vector<CorpusEntry> out;
  const nlohmann::json* list = &j;
  if (j.is_object() && j.contains("diagrams")) list = &j.at("diagrams");
  auto one = [&](const nlohmann::json& e) {
    NamedDiagram nd = diagram_from_json(e);
    CorpusEntry c{nd.name, nd.diagram, std::nullopt};
    if (e.contains("corrupt_edge")) {
      try {
        const auto& f = e.at("corrupt_edge");
        c.fault = FaultInjection{State{f.at("state").get<std::vector<int>>()}, f.at("crossing").get<int>()};
      } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad corrupt_edge field: ") + ex.what());
      }
    }
    out.push_back(std::move(c));
  };
  if (list->is_array()) {
    for (const auto& e : *list) one(e);
  } else {
    one(*list);
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].name.empty()) out[i].name = "#" + std::to_string(i + 1);
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
    return corpus_from_json(j);
  }
  std::vector<CorpusEntry> out;
  int n = 0;
  for (auto& d : parse_pd_lines(text)) out.push_back({path + ":" + std::to_string(++n), std::move(d), std::nullopt});
  return out;
}

nlohmann::json corpus_entry_to_json(const CorpusEntry& e) {
  nlohmann::json j = to_json(e.diagram, e.name);
  if (e.fault) j["corrupt_edge"] = {{"state", e.fault->state.values}, {"crossing", e.fault->crossing}};
  return j;
}

bool DiagramReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

template <class Fn>
CheckResult run_check(const std::string& name, Fn&& fn) {
  CheckResult r{name, false, ""};
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
  }
  return r;
}

// Diagrams with an added curl of each sign, on the smallest arc.
std::vector<std::pair<LinkDiagram, int>> curled(const LinkDiagram& d) {
  std::vector<std::pair<LinkDiagram, int>> out;
  for (int sign : {1, -1}) {
    MoveSpec mv;
    mv.arc = d.arcs().front();
    mv.sign = sign;
    mv.side = sign;
    LinkDiagram c = apply_move(d, mv);
    out.push_back({c, c.size() - 1});
  }
  return out;
}

}  // namespace

DiagramReport verify_diagram(const CorpusEntry& e, const VerifyOptions& opts) {
  DiagramReport rep;
  rep.name = e.name;
  const LinkDiagram& d = e.diagram;
  BuildOptions bo;
  bo.jobs = opts.jobs;
  bo.fault = e.fault;

  std::optional<ChainComplex> graded, lee;
  rep.checks.push_back(run_check("d2-graded", [&](CheckResult& r) {
    graded = build_complex(d, Ring::Graded, bo);
    auto v = verify_d_squared(*graded);
    r.pass = v.ok;
    r.detail = v.to_string();
  }));
  rep.checks.push_back(run_check("d2-lee", [&](CheckResult& r) {
    lee = build_complex(d, Ring::Lee, bo);
    auto v = verify_d_squared(*lee);
    r.pass = v.ok;
    r.detail = v.to_string();
  }));

  LaurentPoly bracket = bracket_state_sum(d, opts.jobs);
  std::optional<BigradedHomology> kh;
  rep.checks.push_back(run_check("euler=bracket", [&](CheckResult& r) {
    if (!graded) throw VerificationError("no complex");
    kh = homology(*graded, opts.jobs);
    LaurentPoly chi_k = graded_euler_characteristic(*graded);
    LaurentPoly chi_h = graded_euler_characteristic(*kh);
    r.pass = chi_k == bracket && chi_h == bracket;
    r.detail = "bracket " + bracket.to_string() + ", chi " + chi_h.to_string();
  }));
  rep.checks.push_back(run_check("bracket=kauffman", [&](CheckResult& r) {
    LaurentPoly k = jones_via_kauffman(d);
    r.pass = k == bracket;
    r.detail = "kauffman " + k.to_string();
  }));
  rep.checks.push_back(run_check("reidemeister", [&](CheckResult& r) {
    if (!kh) throw VerificationError("no homology for the input diagram");
    std::mt19937_64 rng(opts.seed);
    r.pass = true;
    std::ostringstream os;
    for (int v = 0; v < opts.variants; ++v) {
      std::vector<MoveSpec> log;
      LinkDiagram dv = random_moves(d, opts.moves, rng, std::max(opts.max_crossings, d.size()), &log);
      bool same = khovanov_homology(dv, opts.jobs) == *kh;
      os << (v ? "; " : "") << dv.size() << " crossings after " << log.size() << " moves" << (same ? "" : " DIFFERS");
      r.pass = r.pass && same;
    }
    r.detail = os.str();
  }));
  rep.checks.push_back(run_check("lee-rank", [&](CheckResult& r) {
    if (!lee) throw VerificationError("no Lee complex");
    BigradedHomology lh = homology(*lee, opts.jobs);
    std::size_t expect = std::size_t{1} << d.component_count();
    CanonicalReport can = lee_canonical_classes(d, &*lee);
    r.pass = lh.total_free() == expect && !lh.has_torsion() && can.all_cycles && can.independent &&
             can.classes.size() == expect;
    r.detail = "rank " + std::to_string(lh.total_free()) + " (2^" + std::to_string(d.component_count()) + "), " +
               can.to_string().substr(0, can.to_string().find('\n'));
  }));
  if (opts.r1 && !e.fault && d.size() + 1 <= std::max(opts.max_crossings, d.size() + 1)) {
    rep.checks.push_back(run_check("r1-identities", [&](CheckResult& r) {
      r.pass = true;
      std::ostringstream os;
      for (auto& [c, x] : curled(d)) {
        R1Maps m = r1_chain_maps(c, x);
        R1Identities ids = check_r1_identities(m);
        os << (m.site.sign > 0 ? "positive: " : "; negative: ") << (ids.all() ? "ok" : ids.to_string());
        r.pass = r.pass && ids.all();
      }
      r.detail = os.str();
    }));
  }
  return rep;
}

}  // namespace okh
