#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "okh/diagram.hpp"
#include "okh/error.hpp"

namespace okh {

namespace {

bool is_sep(char ch) { return std::isspace(static_cast<unsigned char>(ch)) || ch == ','; }

ArcId parse_int(std::string_view s, std::string_view token) {
  ArcId v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError("malformed token '" + std::string(token) + "'");
  return v;
}

std::vector<ArcId> parse_args(std::string_view token, std::size_t open) {
  if (token.back() != ']') throw ParseError("malformed token '" + std::string(token) + "'");
  std::string_view body = token.substr(open + 1, token.size() - open - 2);
  std::vector<ArcId> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    out.push_back(parse_int(body.substr(pos, comma - pos), token));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

LinkDiagram parse_pd(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::string_view rest = text.substr(i);
  while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
  if (rest.size() >= 3 && rest.substr(0, 3) == "PD[" && rest.back() == ']')
    rest = rest.substr(3, rest.size() - 4);

  std::vector<std::array<ArcId, 4>> ends;
  std::vector<std::optional<ArcId>> loops;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    if (is_sep(rest[pos])) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    int depth = 0;
    while (end < rest.size() && (depth > 0 || !is_sep(rest[end]))) {
      if (rest[end] == '[') ++depth;
      if (rest[end] == ']') --depth;
      ++end;
    }
    std::string_view token = rest.substr(pos, end - pos);
    pos = end;
    if (token == "O") {
      loops.emplace_back();
    } else if (token.size() > 2 && token[0] == 'O' && token[1] == '[') {
      auto args = parse_args(token, 1);
      if (args.size() != 1) throw ParseError("malformed token '" + std::string(token) + "'");
      loops.emplace_back(args[0]);
    } else if (token.size() > 2 && token[0] == 'X' && token[1] == '[') {
      auto args = parse_args(token, 1);
      if (args.size() != 4) throw ParseError("malformed token '" + std::string(token) + "'");
      ends.push_back({args[0], args[1], args[2], args[3]});
    } else {
      throw ParseError("malformed token '" + std::string(token) + "'");
    }
  }

  ArcId fresh = 0;
  for (const auto& e : ends)
    for (ArcId a : e) fresh = std::max(fresh, a);
  for (const auto& l : loops)
    if (l) fresh = std::max(fresh, *l);
  std::vector<ArcId> loop_ids;
  for (const auto& l : loops) loop_ids.push_back(l ? *l : ++fresh);
  return LinkDiagram::from_ends(ends, std::move(loop_ids));
}

std::vector<LinkDiagram> parse_pd_lines(std::string_view text) {
  std::vector<LinkDiagram> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    out.push_back(parse_pd(line));
  }
  return out;
}

std::string raw_pd(const LinkDiagram& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : d.crossings()) {
    if (!first) os << ' ';
    first = false;
    os << "X[" << c.ends[0] << ',' << c.ends[1] << ',' << c.ends[2] << ',' << c.ends[3] << ']';
  }
  for (ArcId l : d.loops()) {
    if (!first) os << ' ';
    first = false;
    os << "O[" << l << ']';
  }
  return os.str();
}

std::string serialize_pd(const LinkDiagram& d) {
  LinkDiagram c = canonical_relabel(d);
  std::ostringstream os;
  bool first = true;
  for (const auto& x : c.crossings()) {
    if (!first) os << ' ';
    first = false;
    os << "X[" << x.ends[0] << ',' << x.ends[1] << ',' << x.ends[2] << ',' << x.ends[3] << ']';
  }
  for (std::size_t i = 0; i < c.loops().size(); ++i) {
    if (!first) os << ' ';
    first = false;
    os << 'O';
  }
  return os.str();
}

nlohmann::json to_json(const LinkDiagram& d, const std::string& name) {
  nlohmann::json j;
  if (!name.empty()) j["name"] = name;
  j["pd"] = nlohmann::json::array();
  j["over_in"] = nlohmann::json::array();
  for (const auto& c : d.crossings()) {
    j["pd"].push_back({c.ends[0], c.ends[1], c.ends[2], c.ends[3]});
    j["over_in"].push_back(c.over_in);
  }
  j["loops"] = d.loops();
  return j;
}

NamedDiagram diagram_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("diagram entry must be an object");
  NamedDiagram out;
  out.name = j.value("name", "");
  if (j.contains("text")) {
    out.diagram = parse_pd(j.at("text").get<std::string>());
    return out;
  }
  std::vector<std::array<ArcId, 4>> ends;
  try {
    for (const auto& q : j.at("pd")) {
      auto v = q.get<std::vector<ArcId>>();
      if (v.size() != 4) throw ParseError("pd entries must have four arcs");
      ends.push_back({v[0], v[1], v[2], v[3]});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad pd field: ") + e.what());
  }
  std::vector<ArcId> loops;
  if (j.contains("loops")) {
    const auto& l = j.at("loops");
    if (l.is_number_integer()) {
      ArcId fresh = 0;
      for (const auto& e : ends)
        for (ArcId a : e) fresh = std::max(fresh, a);
      for (int i = 0; i < l.get<int>(); ++i) loops.push_back(++fresh);
    } else {
      loops = l.get<std::vector<ArcId>>();
    }
  }
  if (j.contains("over_in")) {
    auto over = j.at("over_in").get<std::vector<int>>();
    if (over.size() != ends.size()) throw ParseError("over_in must have one entry per crossing");
    std::vector<Crossing> cs;
    for (std::size_t i = 0; i < ends.size(); ++i) cs.push_back({ends[i], over[i]});
    out.diagram = LinkDiagram(std::move(cs), std::move(loops));
  } else {
    out.diagram = LinkDiagram::from_ends(ends, std::move(loops));
  }
  return out;
}

}  // namespace okh
