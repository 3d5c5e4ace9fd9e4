#include "statefiber/decompose.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>

namespace statefiber {

std::string_view to_string(StepKind k) noexcept {
  switch (k) {
    case StepKind::Split: return "split";
    case StepKind::DeleteParallel: return "delete_parallel";
    case StepKind::DistinctParallel: return "distinct_parallel";
    case StepKind::Collapse: return "collapse";
    case StepKind::Tree: return "tree";
    case StepKind::Irreducible: return "irreducible";
  }
  return "?";
}

StepKind parse_step_kind(std::string_view s) {
  for (auto k : {StepKind::Split, StepKind::DeleteParallel, StepKind::DistinctParallel, StepKind::Collapse,
                 StepKind::Tree, StepKind::Irreducible})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::Syntax, "unknown step kind '" + std::string(s) + "'");
}

bool PipelineResult::has_distinct_parallel() const {
  return std::any_of(early.begin(), early.end(),
                     [](const EarlyVerdict& v) { return v.kind == EarlyKind::DistinctParallelNotFiber; });
}

namespace {

// Mutable rotation system. Half-edge ids follow the PlanarStateGraph encoding;
// dead edges and vertices stay in the arrays and are skipped.
struct WorkMap {
  std::vector<VertexId> org;
  std::vector<HalfEdge> nxt, prv;  // counterclockwise ring around org
  std::vector<EdgeLabel> lab;
  std::vector<EdgeId> orig;
  std::vector<char> edge_alive;
  std::vector<int> deg;
  std::vector<HalfEdge> anyh;
  std::vector<VertexSign> sgn;
  std::vector<char> v_alive;
  int live_edges = 0;
  int live_vertices = 0;

  static WorkMap build(const std::vector<std::vector<HalfEdge>>& rot, const std::vector<EdgeLabel>& labels,
                       const std::vector<EdgeId>& origin, const std::vector<VertexSign>& signs) {
    WorkMap m;
    const int e = static_cast<int>(labels.size());
    const int v = static_cast<int>(rot.size());
    m.org.assign(2 * e, -1);
    m.nxt.assign(2 * e, -1);
    m.prv.assign(2 * e, -1);
    m.lab = labels;
    m.orig = origin;
    m.edge_alive.assign(e, 1);
    m.deg.assign(v, 0);
    m.anyh.assign(v, -1);
    m.sgn = signs;
    m.v_alive.assign(v, 1);
    m.live_edges = e;
    m.live_vertices = v;
    for (VertexId x = 0; x < v; ++x) {
      const auto& r = rot[x];
      const int d = static_cast<int>(r.size());
      m.deg[x] = d;
      if (d) m.anyh[x] = r[0];
      for (int i = 0; i < d; ++i) {
        m.org[r[i]] = x;
        m.nxt[r[i]] = r[(i + 1) % d];
        m.prv[r[i]] = r[(i + d - 1) % d];
      }
    }
    return m;
  }

  static WorkMap from_graph(const PlanarStateGraph& g, const std::vector<EdgeId>& origin) {
    if (!g.signs()) throw Error(ErrorCode::Unsigned, "piece has no vertex signs");
    return build(g.rotations(), g.labels(), origin, *g.signs());
  }

  VertexId far(HalfEdge h) const { return org[twin(h)]; }

  void unlink(HalfEdge h) {
    const VertexId v = org[h];
    if (deg[v] == 1) {
      anyh[v] = -1;
    } else {
      nxt[prv[h]] = nxt[h];
      prv[nxt[h]] = prv[h];
      if (anyh[v] == h) anyh[v] = nxt[h];
    }
    --deg[v];
  }

  void kill_vertex(VertexId v) {
    v_alive[v] = 0;
    --live_vertices;
  }

  void delete_edge(EdgeId e) {
    unlink(2 * e);
    unlink(2 * e + 1);
    edge_alive[e] = 0;
    --live_edges;
    for (VertexId v : {org[2 * e], org[2 * e + 1]})
      if (v_alive[v] && deg[v] == 0 && live_vertices > 1) kill_vertex(v);
  }

  // Contracts non-loop edge e into the endpoint `keep`; the kept vertex's ring
  // continues after e with the other endpoint's ring after e.
  void contract(EdgeId e, VertexId keep) {
    HalfEdge hk = 2 * e, hd = 2 * e + 1;
    if (org[hk] != keep) std::swap(hk, hd);
    const VertexId d = org[hd];
    for (HalfEdge h = nxt[hd]; h != hd; h = nxt[h]) org[h] = keep;
    const bool k_rest = deg[keep] > 1, d_rest = deg[d] > 1;
    if (k_rest && d_rest) {
      const HalfEdge a = nxt[hk], a2 = prv[hk], b = nxt[hd], b2 = prv[hd];
      nxt[a2] = b;
      prv[b] = a2;
      nxt[b2] = a;
      prv[a] = b2;
      anyh[keep] = a;
    } else if (k_rest) {
      nxt[prv[hk]] = nxt[hk];
      prv[nxt[hk]] = prv[hk];
      anyh[keep] = nxt[hk];
    } else if (d_rest) {
      nxt[prv[hd]] = nxt[hd];
      prv[nxt[hd]] = prv[hd];
      anyh[keep] = nxt[hd];
    } else {
      anyh[keep] = -1;
    }
    deg[keep] += deg[d] - 2;
    deg[d] = 0;
    anyh[d] = -1;
    edge_alive[e] = 0;
    --live_edges;
    kill_vertex(d);
  }

  // Sub-piece on the live edges selected by `keep_edge`.
  template <class Keep>
  Piece extract(int id, Keep keep_edge) const {
    std::vector<EdgeId> edge_map(lab.size(), -1);
    std::vector<EdgeLabel> labels;
    std::vector<EdgeId> origin;
    labels.reserve(lab.size());
    origin.reserve(lab.size());
    for (EdgeId e = 0; e < static_cast<EdgeId>(lab.size()); ++e)
      if (edge_alive[e] && keep_edge(e)) {
        edge_map[e] = static_cast<EdgeId>(labels.size());
        labels.push_back(lab[e]);
        origin.push_back(orig[e]);
      }
    std::vector<std::vector<HalfEdge>> rot;
    std::vector<VertexSign> signs;
    rot.reserve(live_vertices);
    signs.reserve(live_vertices);
    for (VertexId v = 0; v < static_cast<VertexId>(deg.size()); ++v) {
      if (!v_alive[v]) continue;
      if (labels.empty()) {  // single-vertex piece
        rot.emplace_back();
        signs.push_back(sgn[v]);
        break;
      }
      if (deg[v] == 0) continue;
      std::vector<HalfEdge> r;
      r.reserve(deg[v]);
      HalfEdge start = anyh[v];
      for (HalfEdge h = nxt[start]; h != anyh[v]; h = nxt[h]) start = std::min(start, h);
      HalfEdge h = start;
      do {
        if (edge_map[edge_of(h)] >= 0) r.push_back(2 * edge_map[edge_of(h)] + (h & 1));
        h = nxt[h];
      } while (h != start);
      if (r.empty()) continue;
      rot.push_back(std::move(r));
      signs.push_back(sgn[v]);
    }
    Piece p;
    p.id = id;
    p.graph = PlanarStateGraph(std::move(rot), std::move(labels)).with_signs(std::move(signs));
    p.origin = std::move(origin);
    return p;
  }

  Piece to_piece(int id) const {
    return extract(id, [](EdgeId) { return true; });
  }

  // Edge sets of the blocks (biconnected components), each sorted, ordered by
  // smallest original edge id.
  std::vector<std::vector<EdgeId>> blocks() const {
    std::vector<std::vector<EdgeId>> out;
    if (live_edges == 0) return out;
    const int n = static_cast<int>(deg.size());
    std::vector<int> disc(n, -1), low(n, 0);
    struct Frame {
      VertexId v;
      EdgeId parent_edge;
      HalfEdge cur;
      int left;
    };
    std::vector<Frame> frames;
    std::vector<EdgeId> estack;
    VertexId root = 0;
    while (!v_alive[root] || deg[root] == 0) ++root;
    int t = 0;
    disc[root] = low[root] = t++;
    frames.push_back({root, -1, anyh[root], deg[root]});
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.left > 0) {
        const HalfEdge h = f.cur;
        f.cur = nxt[h];
        --f.left;
        const EdgeId e = edge_of(h);
        if (e == f.parent_edge) continue;
        const VertexId w = far(h);
        if (disc[w] == -1) {
          estack.push_back(e);
          disc[w] = low[w] = t++;
          frames.push_back({w, e, anyh[w], deg[w]});
        } else if (disc[w] < disc[f.v]) {
          estack.push_back(e);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Frame done = f;
      frames.pop_back();
      if (frames.empty()) break;
      Frame& p = frames.back();
      low[p.v] = std::min(low[p.v], low[done.v]);
      if (low[done.v] >= disc[p.v]) {
        auto& block = out.emplace_back();
        EdgeId e;
        do {
          e = estack.back();
          estack.pop_back();
          block.push_back(e);
        } while (e != done.parent_edge);
      }
    }
    auto min_orig = [&](const std::vector<EdgeId>& b) {
      EdgeId m = orig[b[0]];
      for (EdgeId e : b) m = std::min(m, orig[e]);
      return m;
    };
    for (auto& b : out) std::sort(b.begin(), b.end());
    std::sort(out.begin(), out.end(),
              [&](const auto& x, const auto& y) { return min_orig(x) < min_orig(y); });
    return out;
  }
};

struct Candidate {
  StepKind kind;
  int a;  // bigon: half-edge on the face; collapse: middle vertex
};

void collect_candidates(const WorkMap& m, std::vector<Candidate>& out) {
  out.clear();
  const HalfEdge hn = static_cast<HalfEdge>(m.org.size());
  for (HalfEdge h = 0; h < hn; ++h) {
    if (!m.edge_alive[edge_of(h)]) continue;
    const HalfEdge n1 = m.nxt[twin(h)];
    if (edge_of(n1) != edge_of(h) && h < n1 && m.nxt[twin(n1)] == h)
      out.push_back({m.lab[edge_of(h)] == m.lab[edge_of(n1)] ? StepKind::DeleteParallel
                                                              : StepKind::DistinctParallel,
                     h});
  }
  for (VertexId v = 0; v < static_cast<VertexId>(m.deg.size()); ++v) {
    if (!m.v_alive[v] || m.deg[v] != 2) continue;
    const HalfEdge h1 = m.anyh[v], h2 = m.nxt[h1];
    if (m.lab[edge_of(h1)] != m.lab[edge_of(h2)] && m.far(h1) != m.far(h2))
      out.push_back({StepKind::Collapse, v});
  }
}

// Runs the local rules on m to a fixpoint. Steps are appended to `log` when given.
std::optional<EarlyVerdict> reduce_local(WorkMap& m, int piece, const StepChooser& choose,
                                         std::vector<Step>* log, std::vector<Candidate>& cands) {
  auto remaining = [&] {
    std::vector<EdgeId> r;
    for (EdgeId e = 0; e < static_cast<EdgeId>(m.lab.size()); ++e)
      if (m.edge_alive[e]) r.push_back(m.orig[e]);
    std::sort(r.begin(), r.end());
    return r;
  };
  while (true) {
    if (m.live_edges == m.live_vertices - 1) {
      EarlyVerdict v{EarlyKind::TreeFiber, piece, remaining()};
      if (log) log->push_back({StepKind::Tree, piece, v.witness, {}});
      return v;
    }
    collect_candidates(m, cands);
    if (cands.empty()) return std::nullopt;
    std::size_t pick = choose ? choose(cands.size()) : 0;
    if (pick >= cands.size()) pick = cands.size() - 1;
    const Candidate c = cands[pick];
    if (c.kind == StepKind::Collapse) {
      const HalfEdge h1 = m.anyh[c.a], h2 = m.nxt[h1];
      const EdgeId e1 = edge_of(h1), e2 = edge_of(h2);
      if (log) log->push_back({StepKind::Collapse, piece, {m.orig[e1], m.orig[e2]}, {}});
      const VertexId u = m.far(h1);
      m.contract(e1, u);
      m.contract(e2, u);
      continue;
    }
    const EdgeId e = edge_of(c.a), f = edge_of(m.nxt[twin(c.a)]);
    if (c.kind == StepKind::DistinctParallel) {
      EarlyVerdict v{EarlyKind::DistinctParallelNotFiber, piece, {m.orig[e], m.orig[f]}};
      std::sort(v.witness.begin(), v.witness.end());
      if (log) log->push_back({StepKind::DistinctParallel, piece, v.witness, {}});
      return v;
    }
    const EdgeId kept = m.orig[e] < m.orig[f] ? e : f;
    const EdgeId gone = kept == e ? f : e;
    if (log) log->push_back({StepKind::DeleteParallel, piece, {m.orig[kept], m.orig[gone]}, {}});
    m.delete_edge(gone);
  }
}

std::vector<EdgeId> identity_ids(int n) {
  std::vector<EdgeId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

std::vector<Piece> split_cut_vertices(const PlanarStateGraph& g) {
  const PlanarStateGraph sg = g.signs() ? g : g.with_signs(std::vector<VertexSign>(g.vertex_count()));
  const WorkMap m = WorkMap::from_graph(sg, identity_ids(g.edge_count()));
  std::vector<Piece> out;
  const auto blocks = m.blocks();
  if (blocks.empty()) {
    out.push_back(m.to_piece(0));
  } else {
    for (const auto& b : blocks) {
      std::vector<char> in(g.edge_count(), 0);
      for (EdgeId e : b) in[e] = 1;
      out.push_back(m.extract(static_cast<int>(out.size()), [&](EdgeId e) { return in[e] != 0; }));
    }
  }
  if (!g.signs())
    for (auto& p : out) p.graph = p.graph.without_signs();
  return out;
}

Reduction reduce_piece(const Piece& p, const StepChooser& choose) {
  WorkMap m = WorkMap::from_graph(p.graph, p.origin);
  Reduction r;
  std::vector<Candidate> cands;
  r.verdict = reduce_local(m, p.id, choose, &r.steps, cands);
  r.piece = m.to_piece(p.id);
  return r;
}

PipelineResult pipeline(const PlanarStateGraph& g, const PipelineOptions& opts) {
  require_valid(g);
  return pipeline_signed(g.signs() ? g : assign_signs(g), opts);
}

PipelineResult pipeline_signed(PlanarStateGraph g, const PipelineOptions& opts) {
  PipelineResult r;
  r.input = std::move(g);
  std::vector<Step>* log = opts.record ? &r.log : nullptr;
  std::vector<Candidate> cands;

  std::deque<std::pair<int, WorkMap>> queue;
  int next_id = 1;
  auto split_into = [&](int id, const WorkMap& m, const std::vector<std::vector<EdgeId>>& blocks) {
    Step s{StepKind::Split, id, {}, {}};
    for (const auto& b : blocks) {
      std::vector<char> in(m.lab.size(), 0);
      for (EdgeId e : b) in[e] = 1;
      const Piece child = m.extract(next_id, [&](EdgeId e) { return in[e] != 0; });
      s.children.push_back(next_id);
      queue.emplace_back(next_id++, WorkMap::from_graph(child.graph, child.origin));
    }
    if (log) log->push_back(std::move(s));
  };

  WorkMap root = WorkMap::from_graph(r.input, identity_ids(r.input.edge_count()));
  const auto root_blocks = root.blocks();
  if (root_blocks.size() <= 1) {
    // Already one block (or a lone vertex): the only child is the input itself.
    if (log) log->push_back({StepKind::Split, 0, {}, {next_id}});
    queue.emplace_back(next_id++, std::move(root));
  } else {
    split_into(0, root, root_blocks);
  }

  while (!queue.empty()) {
    auto [id, m] = std::move(queue.front());
    queue.pop_front();
    if (auto v = reduce_local(m, id, opts.choose, log, cands)) {
      r.early.push_back(std::move(*v));
      continue;
    }
    const auto blocks = m.blocks();
    if (blocks.size() > 1) {
      split_into(id, m, blocks);
      continue;
    }
    Piece p = m.to_piece(id);
    if (log) {
      std::vector<EdgeId> rem = p.origin;
      std::sort(rem.begin(), rem.end());
      log->push_back({StepKind::Irreducible, id, std::move(rem), {}});
    }
    r.irreducible.push_back(std::move(p));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reference replay

namespace {

[[noreturn]] void mismatch(const Step& s, const std::string& why) {
  throw Error(ErrorCode::InternalMismatch,
              "step " + std::string(to_string(s.kind)) + " on piece " + std::to_string(s.piece) + ": " + why);
}

EdgeId local_id(const Piece& p, EdgeId original, const Step& s) {
  const auto it = std::find(p.origin.begin(), p.origin.end(), original);
  if (it == p.origin.end()) mismatch(s, "edge " + std::to_string(original) + " not in piece");
  return static_cast<EdgeId>(it - p.origin.begin());
}

bool bounds_bigon(const PlanarStateGraph& g, EdgeId e, EdgeId f) {
  for (HalfEdge h : {2 * e, 2 * e + 1}) {
    const HalfEdge n = g.next_in_face(h);
    if (edge_of(n) == f && g.next_in_face(n) == h) return true;
  }
  return false;
}

bool any_rule_applies(const PlanarStateGraph& g) {
  for (HalfEdge h = 0; h < g.half_edge_count(); ++h) {
    const HalfEdge n = g.next_in_face(h);
    if (edge_of(n) != edge_of(h) && g.next_in_face(n) == h) return true;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 2) continue;
    const HalfEdge a = g.rotation(v)[0], b = g.rotation(v)[1];
    if (g.label(edge_of(a)) != g.label(edge_of(b)) && g.target(a) != g.target(b)) return true;
  }
  return false;
}

void drop_edge(Piece& p, EdgeId local) {
  std::vector<EdgeId> map;
  const EdgeId del[] = {local};
  p.graph = remove_edges(p.graph, del, &map);
  std::vector<EdgeId> origin(p.graph.edge_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(map.size()); ++e)
    if (map[e] >= 0) origin[map[e]] = p.origin[e];
  p.origin = std::move(origin);
}

void contract_local(Piece& p, EdgeId local) {
  std::vector<EdgeId> map;
  p.graph = contract_edge(p.graph, local, &map);
  std::vector<EdgeId> origin(p.graph.edge_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(map.size()); ++e)
    if (map[e] >= 0) origin[map[e]] = p.origin[e];
  p.origin = std::move(origin);
}

std::vector<EdgeId> sorted(std::vector<EdgeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

void verify_reduction_log(const PlanarStateGraph& g, const std::vector<Step>& log,
                          const std::vector<Piece>& irreducible) {
  std::map<int, Piece> live;
  live[0] = Piece{0, g.signs() ? g : assign_signs(g), identity_ids(g.edge_count())};
  std::map<int, const Piece*> reported;
  for (const auto& p : irreducible) reported[p.id] = &p;
  int next_id = 1;
  std::size_t finished_irreducible = 0;

  for (const Step& s : log) {
    auto it = live.find(s.piece);
    if (it == live.end()) mismatch(s, "unknown or finished piece");
    Piece& p = it->second;
    switch (s.kind) {
      case StepKind::Split: {
        auto blocks = split_cut_vertices(p.graph);
        if (blocks.size() != s.children.size()) mismatch(s, "wrong number of blocks");
        if (blocks.size() == 1 && s.piece != 0) mismatch(s, "split of a 2-connected piece");
        std::vector<Piece> children;
        for (auto& b : blocks) {
          Piece c{0, b.graph, {}};
          for (EdgeId e : b.origin) c.origin.push_back(p.origin[e]);
          children.push_back(std::move(c));
        }
        std::sort(children.begin(), children.end(), [](const Piece& a, const Piece& b) {
          const EdgeId ma = a.origin.empty() ? -1 : *std::min_element(a.origin.begin(), a.origin.end());
          const EdgeId mb = b.origin.empty() ? -1 : *std::min_element(b.origin.begin(), b.origin.end());
          return ma < mb;
        });
        for (std::size_t i = 0; i < children.size(); ++i) {
          if (s.children[i] != next_id) mismatch(s, "unexpected child id");
          children[i].id = next_id;
          live[next_id++] = std::move(children[i]);
        }
        live.erase(it);
        break;
      }
      case StepKind::DeleteParallel:
      case StepKind::DistinctParallel: {
        if (s.edges.size() != 2) mismatch(s, "expected two edges");
        const EdgeId a = local_id(p, s.edges[0], s), b = local_id(p, s.edges[1], s);
        if (a == b || !bounds_bigon(p.graph, a, b)) mismatch(s, "edges do not bound a bigon face");
        const bool same = p.graph.label(a) == p.graph.label(b);
        if (same != (s.kind == StepKind::DeleteParallel)) mismatch(s, "label relation wrong");
        if (same) drop_edge(p, b);
        else live.erase(it);
        break;
      }
      case StepKind::Collapse: {
        if (s.edges.size() != 2) mismatch(s, "expected two edges");
        const EdgeId a = local_id(p, s.edges[0], s), b = local_id(p, s.edges[1], s);
        if (p.graph.label(a) == p.graph.label(b)) mismatch(s, "labels agree");
        VertexId mid = -1;
        for (VertexId x : {p.graph.origin(2 * a), p.graph.origin(2 * a + 1)})
          if (x == p.graph.origin(2 * b) || x == p.graph.origin(2 * b + 1)) mid = x;
        if (mid < 0 || p.graph.degree(mid) != 2) mismatch(s, "edges do not meet at a degree-2 vertex");
        const VertexId ua = p.graph.origin(2 * a) == mid ? p.graph.origin(2 * a + 1) : p.graph.origin(2 * a);
        const VertexId ub = p.graph.origin(2 * b) == mid ? p.graph.origin(2 * b + 1) : p.graph.origin(2 * b);
        if (ua == ub) mismatch(s, "far endpoints coincide");
        const EdgeId second = s.edges[1];
        contract_local(p, a);
        contract_local(p, local_id(p, second, s));
        break;
      }
      case StepKind::Tree:
        if (rank(p.graph) != 0) mismatch(s, "piece is not a tree");
        if (sorted(p.origin) != sorted(s.edges)) mismatch(s, "edge set differs");
        live.erase(it);
        break;
      case StepKind::Irreducible: {
        if (rank(p.graph) < 1) mismatch(s, "piece has rank 0");
        if (any_rule_applies(p.graph)) mismatch(s, "a reduction still applies");
        if (split_cut_vertices(p.graph).size() != 1) mismatch(s, "piece has a cut-vertex");
        if (sorted(p.origin) != sorted(s.edges)) mismatch(s, "edge set differs");
        const auto rep = reported.find(s.piece);
        if (rep == reported.end()) mismatch(s, "piece not reported");
        if (canonical_code(rep->second->graph) != canonical_code(p.graph) ||
            sorted(rep->second->origin) != sorted(p.origin))
          mismatch(s, "reported piece differs from replay");
        ++finished_irreducible;
        live.erase(it);
        break;
      }
    }
  }
  if (!live.empty())
    throw Error(ErrorCode::InternalMismatch,
                "piece " + std::to_string(live.begin()->first) + " left unfinished");
  if (finished_irreducible != irreducible.size())
    throw Error(ErrorCode::InternalMismatch, "reported irreducible pieces missing from log");
}

}  // namespace statefiber
