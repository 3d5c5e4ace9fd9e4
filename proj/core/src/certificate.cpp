#include "statefiber/certificate.hpp"

#include "statefiber/graph_io.hpp"

namespace statefiber {

using nlohmann::json;

namespace {

constexpr const char* kKind = "statefiber-certificate";
constexpr const char* kFoldKind = "statefiber-fold";

std::string_view to_string(EarlyKind k) {
  return k == EarlyKind::TreeFiber ? "tree_fiber" : "distinct_parallel_not_fiber";
}

json step_to_json(const Step& s) {
  json j{{"kind", to_string(s.kind)}, {"piece", s.piece}};
  if (!s.edges.empty()) j["edges"] = s.edges;
  if (!s.children.empty()) j["children"] = s.children;
  return j;
}

Step step_from_json(const json& j) {
  Step s;
  s.kind = parse_step_kind(j.at("kind").get<std::string>());
  s.piece = j.at("piece").get<int>();
  s.edges = j.value("edges", std::vector<EdgeId>{});
  s.children = j.value("children", std::vector<int>{});
  return s;
}

json piece_cert_to_json(const Certificate& c) {
  json trace = json::array();
  for (const FoldStep& f : c.trace) trace.push_back({f.vertex, f.kept, f.removed});
  return {{"kind", c.kind == CertificateKind::Rose ? "rose" : "non_rose"},
          {"rank", c.rank},
          {"basepoint", c.basepoint},
          {"outer", c.outer},
          {"contracted", c.contracted},
          {"trace", std::move(trace)},
          {"folded", to_json(c.folded)}};
}

Certificate piece_cert_from_json(const json& j) {
  Certificate c;
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "rose" && kind != "non_rose") throw Error(ErrorCode::Syntax, "bad piece certificate kind '" + kind + "'");
  c.kind = kind == "rose" ? CertificateKind::Rose : CertificateKind::NonRose;
  c.rank = j.at("rank").get<int>();
  c.basepoint = j.at("basepoint").get<VertexId>();
  c.outer = j.at("outer").get<HalfEdge>();
  c.contracted = j.at("contracted").get<std::vector<EdgeId>>();
  for (const auto& t : j.at("trace")) c.trace.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
  c.folded = directed_graph_from_json(j.at("folded"));
  return c;
}

[[noreturn]] void mismatch(const std::string& why) { throw Error(ErrorCode::InternalMismatch, why); }

}  // namespace

json to_json(const DirectedLabeledGraph& g) {
  json arcs = json::array();
  for (const Arc& a : g.arcs) arcs.push_back({a.src, a.dst, a.gen});
  return {{"vertices", g.vertices}, {"basepoint", g.basepoint}, {"arcs", std::move(arcs)}};
}

DirectedLabeledGraph directed_graph_from_json(const json& j) {
  DirectedLabeledGraph g;
  g.vertices = j.at("vertices").get<int>();
  g.basepoint = j.at("basepoint").get<int>();
  for (const auto& a : j.at("arcs")) g.arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>(), a.at(2).get<int>()});
  return g;
}

json certificate_to_json(const Decision& d) {
  json j{{"kind", kKind}, {"version", 1}, {"verdict", to_string(d.verdict)}};
  j["graph"] = serialize_graph(d.pipeline.input);
  if (d.verdict == Verdict::NonOrientable) {
    j["reason"] = d.reason;
    return j;
  }
  if (d.pieces.size() != d.pipeline.irreducible.size())
    throw Error(ErrorCode::InvalidArgument, "decision was short-circuited; no complete certificate");
  json log = json::array();
  for (const Step& s : d.pipeline.log) log.push_back(step_to_json(s));
  j["log"] = std::move(log);
  json early = json::array();
  for (const EarlyVerdict& e : d.pipeline.early)
    early.push_back({{"kind", to_string(e.kind)}, {"piece", e.piece}, {"witness", e.witness}});
  j["early"] = std::move(early);
  json pieces = json::array();
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const Piece& p = d.pipeline.irreducible[i];
    pieces.push_back({{"id", p.id},
                      {"origin", p.origin},
                      {"graph", serialize_graph(p.graph)},
                      {"certificate", piece_cert_to_json(d.pieces[i])}});
  }
  j["pieces"] = std::move(pieces);
  return j;
}

Verdict verify_certificate(const json& cert) {
  try {
    if (cert.at("kind").get<std::string>() != kKind) throw Error(ErrorCode::Syntax, "not a decision certificate");
    const Verdict claimed = parse_verdict(cert.at("verdict").get<std::string>());
    const PlanarStateGraph input = parse_graph(cert.at("graph").get<std::string>());
    require_valid(input);
    PlanarStateGraph g;
    try {
      g = assign_signs(input, 0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonBipartite) throw;
      if (claimed != Verdict::NonOrientable) mismatch("graph has an odd cycle but the verdict is " + std::string(to_string(claimed)));
      return claimed;
    }
    if (claimed == Verdict::NonOrientable) mismatch("graph is bipartite but the verdict is NON_ORIENTABLE");

    std::vector<Step> log;
    for (const auto& s : cert.at("log")) log.push_back(step_from_json(s));
    std::vector<Piece> pieces;
    std::vector<Certificate> certs;
    for (const auto& p : cert.at("pieces")) {
      pieces.push_back({p.at("id").get<int>(), parse_graph(p.at("graph").get<std::string>()),
                        p.at("origin").get<std::vector<EdgeId>>()});
      certs.push_back(piece_cert_from_json(p.at("certificate")));
    }
    verify_reduction_log(g, log, pieces);

    bool fiber = true;
    for (const Step& s : log)
      if (s.kind == StepKind::DistinctParallel) fiber = false;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      verify_piece_certificate(pieces[i].graph, certs[i]);
      if (certs[i].kind == CertificateKind::NonRose) fiber = false;
    }
    const Verdict derived = fiber ? Verdict::Fiber : Verdict::NotFiber;
    if (derived != claimed)
      mismatch("certificate derives " + std::string(to_string(derived)) + " but records " + std::string(to_string(claimed)));
    return derived;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Syntax, std::string("malformed certificate: ") + e.what());
  }
}

json fold_to_json(const std::vector<FreeWord>& words, int n, const FoldResult& r) {
  std::vector<std::string> ws;
  for (const auto& w : words) ws.push_back(format_word(w));
  json trace = json::array();
  for (const FoldStep& f : r.trace) trace.push_back({f.vertex, f.kept, f.removed});
  return {{"kind", kFoldKind},
          {"version", 1},
          {"generators", n},
          {"words", ws},
          {"rose", is_full_rose(r.graph, n)},
          {"trace", std::move(trace)},
          {"folded", to_json(r.graph)}};
}

bool verify_fold_certificate(const json& cert) {
  try {
    if (cert.at("kind").get<std::string>() != kFoldKind) throw Error(ErrorCode::Syntax, "not a fold certificate");
    const int n = cert.at("generators").get<int>();
    std::vector<FreeWord> words;
    for (const auto& w : cert.at("words")) words.push_back(parse_word(w.get<std::string>()));
    std::vector<FoldStep> trace;
    for (const auto& t : cert.at("trace")) trace.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    const auto folded = directed_graph_from_json(cert.at("folded"));
    replay_folds(build_gamma_from_words(words, n), trace, folded);
    const bool rose = is_full_rose(folded, n);
    if (rose != cert.at("rose").get<bool>()) mismatch("recorded rose flag contradicts the folded graph");
    return rose;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Syntax, std::string("malformed fold certificate: ") + e.what());
  }
}

}  // namespace statefiber
