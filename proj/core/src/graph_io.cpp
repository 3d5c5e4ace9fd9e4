#include "statefiber/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace statefiber {

namespace {

long long parse_id(const std::string& tok, int line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::Syntax, "line " + std::to_string(line) + ": bad id '" + tok + "'");
  try {
    return std::stoll(tok);
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::Syntax, "line " + std::to_string(line) + ": id too large");
  }
}

struct RawVertex {
  long long id;
  std::vector<long long> halves;
  int line;
};
struct RawEdge {
  long long id;
  EdgeLabel label;
  long long h0, h1;
  int line;
};

}  // namespace

PlanarStateGraph parse_graph(std::string_view text) {
  std::vector<RawVertex> vertices;
  std::vector<RawEdge> edges;
  std::optional<long long> outer;
  std::vector<std::pair<long long, VertexSign>> signs;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": " + why);
    };
    if (tok[0] == "vertex") {
      if (tok.size() < 3 || tok[2] != ":") fail("expected 'vertex <id> : ...'");
      RawVertex v{parse_id(tok[1], line_no), {}, line_no};
      for (std::size_t i = 3; i < tok.size(); ++i) v.halves.push_back(parse_id(tok[i], line_no));
      vertices.push_back(std::move(v));
    } else if (tok[0] == "edge") {
      if (tok.size() != 6 || tok[3] != ":" || tok[2].size() != 1)
        fail("expected 'edge <id> <A|B> : <h> <h>'");
      if (tok[2] != "A" && tok[2] != "B") fail("edge label must be A or B");
      edges.push_back({parse_id(tok[1], line_no), parse_label(tok[2][0]), parse_id(tok[4], line_no),
                       parse_id(tok[5], line_no), line_no});
    } else if (tok[0] == "outer") {
      if (tok.size() != 3 || tok[1] != ":") fail("expected 'outer : <h>'");
      if (outer) fail("duplicate outer line");
      outer = parse_id(tok[2], line_no);
    } else if (tok[0] == "sign") {
      if (tok.size() != 4 || tok[2] != ":" || (tok[3] != "+" && tok[3] != "-"))
        fail("expected 'sign <vertex> : <+|->'");
      signs.emplace_back(parse_id(tok[1], line_no),
                         tok[3] == "+" ? VertexSign::Plus : VertexSign::Minus);
    } else {
      fail("unknown directive '" + tok[0] + "'");
    }
  }
  if (vertices.empty()) throw Error(ErrorCode::Syntax, "no vertices");

  std::unordered_map<long long, HalfEdge> half_index;
  std::unordered_map<long long, int> edge_ids;
  std::vector<EdgeLabel> labels;
  for (const auto& e : edges) {
    if (!edge_ids.emplace(e.id, static_cast<int>(labels.size())).second)
      throw Error(ErrorCode::Syntax, "line " + std::to_string(e.line) + ": duplicate edge id");
    const HalfEdge base = 2 * static_cast<int>(labels.size());
    if (e.h0 == e.h1 || !half_index.emplace(e.h0, base).second ||
        !half_index.emplace(e.h1, base + 1).second)
      throw Error(ErrorCode::MalformedRotation,
                  "line " + std::to_string(e.line) + ": half-edge used by more than one edge");
    labels.push_back(e.label);
  }

  std::unordered_map<long long, VertexId> vertex_ids;
  std::vector<std::vector<HalfEdge>> rotation;
  for (const auto& v : vertices) {
    if (!vertex_ids.emplace(v.id, static_cast<VertexId>(rotation.size())).second)
      throw Error(ErrorCode::Syntax, "line " + std::to_string(v.line) + ": duplicate vertex id");
    auto& rot = rotation.emplace_back();
    for (long long h : v.halves) {
      auto it = half_index.find(h);
      if (it == half_index.end())
        throw Error(ErrorCode::MalformedRotation,
                    "line " + std::to_string(v.line) + ": half-edge " + std::to_string(h) +
                        " is not part of an edge");
      rot.push_back(it->second);
    }
  }

  std::optional<HalfEdge> outer_half;
  if (outer) {
    auto it = half_index.find(*outer);
    if (it == half_index.end()) throw Error(ErrorCode::MalformedRotation, "unknown outer half-edge");
    outer_half = it->second;
  }
  PlanarStateGraph g(std::move(rotation), std::move(labels), outer_half);
  if (!signs.empty()) {
    if (static_cast<int>(signs.size()) != g.vertex_count())
      throw Error(ErrorCode::Syntax, "sign lines must cover every vertex");
    std::vector<VertexSign> s(g.vertex_count());
    std::vector<char> seen(g.vertex_count(), 0);
    for (auto [id, sg] : signs) {
      auto it = vertex_ids.find(id);
      if (it == vertex_ids.end() || seen[it->second])
        throw Error(ErrorCode::Syntax, "bad sign line for vertex " + std::to_string(id));
      seen[it->second] = 1;
      s[it->second] = sg;
    }
    g = g.with_signs(std::move(s));
  }
  return g;
}

std::string serialize_graph(const PlanarStateGraph& g) {
  std::ostringstream out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "vertex " << v << " :";
    for (HalfEdge h : g.rotation(v)) out << ' ' << h;
    out << '\n';
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    out << "edge " << e << ' ' << to_char(g.label(e)) << " : " << 2 * e << ' ' << 2 * e + 1 << '\n';
  if (g.outer()) out << "outer : " << *g.outer() << '\n';
  if (g.signs())
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      out << "sign " << v << " : " << ((*g.signs())[v] == VertexSign::Plus ? '+' : '-') << '\n';
  return out.str();
}

PlanarStateGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace statefiber
