#include "statefiber/stallings.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "statefiber/decompose.hpp"

namespace statefiber {

Labeling label_edges(const PlanarStateGraph& g, const FaceSet& f, bool check_blocks) {
  if (!g.signs()) throw Error(ErrorCode::Unsigned, "labeling needs vertex signs");
  if (check_blocks && split_cut_vertices(g).size() > 1)
    throw Error(ErrorCode::HasCutVertex, "labeling requires a graph without cut-vertices");
  Labeling lab;
  lab.regions = f.bounded_count();
  lab.plus_half.resize(g.edge_count());
  lab.letter.resize(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const VertexSign s0 = g.sign(g.origin(2 * e)), s1 = g.sign(g.origin(2 * e + 1));
    if (s0 == s1) throw Error(ErrorCode::NonBipartite, "edge " + std::to_string(e) + " joins equal signs");
    const HalfEdge h = s0 == VertexSign::Plus ? 2 * e : 2 * e + 1;
    lab.plus_half[e] = h;
    lab.letter[e] = g.label(e) == EdgeLabel::A ? f.region_left(h) : f.region_right(h);
  }
  return lab;
}

namespace {

// Breadth-first tree: parent_half[v] is the half-edge entering v from its parent.
struct Tree {
  std::vector<HalfEdge> parent_half;
  std::vector<int> depth;
  std::vector<char> in_tree;  // per edge

  EdgePath path_to(const PlanarStateGraph& g, VertexId v) const {
    EdgePath p;
    while (parent_half[v] >= 0) {
      p.push_back(parent_half[v]);
      v = g.origin(parent_half[v]);
    }
    std::reverse(p.begin(), p.end());
    return p;
  }
};

Tree bfs_tree(const PlanarStateGraph& g, VertexId root, const std::vector<char>* allowed) {
  Tree t;
  t.parent_half.assign(g.vertex_count(), -1);
  t.depth.assign(g.vertex_count(), -1);
  t.in_tree.assign(g.edge_count(), 0);
  std::deque<VertexId> q{root};
  t.depth[root] = 0;
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop_front();
    for (HalfEdge h : g.rotation(v)) {
      if (allowed && !(*allowed)[edge_of(h)]) continue;
      const VertexId w = g.target(h);
      if (t.depth[w] >= 0) continue;
      t.depth[w] = t.depth[v] + 1;
      t.parent_half[w] = h;
      t.in_tree[edge_of(h)] = 1;
      q.push_back(w);
    }
  }
  return t;
}

EdgePath reversed(const EdgePath& p) {
  EdgePath r;
  r.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) r.push_back(twin(*it));
  return r;
}

void append(EdgePath& a, const EdgePath& b) { a.insert(a.end(), b.begin(), b.end()); }

void check_basepoint(const PlanarStateGraph& g, VertexId b) {
  if (b < 0 || b >= g.vertex_count()) throw Error(ErrorCode::InvalidArgument, "basepoint out of range");
}

}  // namespace

std::vector<EdgePath> generators(const PlanarStateGraph& g, VertexId basepoint, const std::vector<EdgeId>* tree) {
  check_basepoint(g, basepoint);
  Tree t;
  if (tree) {
    std::vector<char> allowed(g.edge_count(), 0);
    for (EdgeId e : *tree) allowed.at(e) = 1;
    t = bfs_tree(g, basepoint, &allowed);
    const int reached = static_cast<int>(std::count_if(t.depth.begin(), t.depth.end(), [](int d) { return d >= 0; }));
    if (static_cast<int>(tree->size()) != g.vertex_count() - 1 || reached != g.vertex_count())
      throw Error(ErrorCode::InvalidArgument, "edges do not form a spanning tree");
  } else {
    t = bfs_tree(g, basepoint, nullptr);
  }
  std::vector<EdgePath> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (t.in_tree[e]) continue;
    EdgePath p = t.path_to(g, g.origin(2 * e));
    p.push_back(2 * e);
    append(p, reversed(t.path_to(g, g.target(2 * e))));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<EdgePath> region_generators(const PlanarStateGraph& g, const FaceSet& f, VertexId basepoint,
                                        const std::vector<EdgePath>& connectors) {
  check_basepoint(g, basepoint);
  const int n = f.bounded_count();
  if (!connectors.empty() && static_cast<int>(connectors.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "need one connector per bounded region");
  const Tree t = bfs_tree(g, basepoint, nullptr);
  std::vector<EdgePath> out;
  for (int r = 1; r <= n; ++r) {
    const auto& cyc = f.cycles[f.face_of_region(r)];
    EdgePath loop;  // region on the left
    for (auto it = cyc.rbegin(); it != cyc.rend(); ++it) loop.push_back(twin(*it));
    EdgePath beta;
    VertexId start;
    if (connectors.empty()) {
      start = g.origin(loop[0]);
      for (HalfEdge h : loop) {
        const VertexId v = g.origin(h);
        if (std::pair(t.depth[v], v) < std::pair(t.depth[start], start)) start = v;
      }
      beta = t.path_to(g, start);
    } else {
      beta = connectors[r - 1];
      start = beta.empty() ? basepoint : g.target(beta.back());
    }
    const auto at = std::find_if(loop.begin(), loop.end(), [&](HalfEdge h) { return g.origin(h) == start; });
    if (at == loop.end())
      throw Error(ErrorCode::InvalidArgument, "connector " + std::to_string(r) + " does not reach its region");
    std::rotate(loop.begin(), at, loop.end());
    EdgePath p = beta;
    append(p, loop);
    append(p, reversed(beta));
    out.push_back(std::move(p));
  }
  return out;
}

FreeWord phi(const PlanarStateGraph& g, const EdgePath& path, const Labeling& lab) {
  FreeWord w;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const HalfEdge h = path[i];
    if (h < 0 || h >= g.half_edge_count()) throw Error(ErrorCode::InvalidArgument, "half-edge out of range");
    const HalfEdge next = path[(i + 1) % path.size()];
    if (g.target(h) != g.origin(next))
      throw Error(ErrorCode::PathNotClosed, "walk breaks after step " + std::to_string(i));
    const int letter = lab.letter[edge_of(h)];
    if (letter == 0) continue;
    w.push_back({letter, h == lab.plus_half[edge_of(h)] ? 1 : -1});
  }
  return reduce(w);
}

GammaFromGraph build_gamma_from_graph(const PlanarStateGraph& g, const Labeling& lab, VertexId basepoint) {
  check_basepoint(g, basepoint);
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  GammaFromGraph out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (lab.letter[e] != 0) continue;
    out.contracted.push_back(e);
    const int a = find(g.origin(2 * e)), b = find(g.origin(2 * e + 1));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> id(g.vertex_count(), -1);
  int next = 0;
  out.vertex_class.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const int r = find(v);
    if (id[r] < 0) id[r] = next++;
    out.vertex_class[v] = id[r];
  }
  out.gamma.vertices = next;
  out.gamma.basepoint = out.vertex_class[basepoint];
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (lab.letter[e] == 0) continue;
    const HalfEdge h = lab.plus_half[e];
    out.gamma.arcs.push_back({out.vertex_class[g.origin(h)], out.vertex_class[g.target(h)], lab.letter[e]});
  }
  return out;
}

std::int64_t determinant(std::vector<std::vector<std::int64_t>> m) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::NonSquare, "matrix is not square");
  if (n == 0) return 1;
  auto fit = [](__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
      throw Error(ErrorCode::InvalidArgument, "determinant overflows 64 bits");
    return static_cast<std::int64_t>(v);
  };
  int sign = 1;
  std::int64_t prev = 1;
  for (int k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      int p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = fit((static_cast<__int128>(m[i][j]) * m[k][k] - static_cast<__int128>(m[i][k]) * m[k][j]) / prev);
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Abelianization abelianize(const std::vector<FreeWord>& words, int n) {
  if (static_cast<int>(words.size()) != n)
    throw Error(ErrorCode::NonSquare,
                std::to_string(words.size()) + " words for " + std::to_string(n) + " generators");
  Abelianization a;
  a.matrix.assign(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (const Letter& l : words[i]) {
      if (l.gen > n) throw Error(ErrorCode::InvalidArgument, "generator u" + std::to_string(l.gen) + " out of range");
      a.matrix[i][l.gen - 1] += l.exp;
    }
  a.det = determinant(a.matrix);
  return a;
}

namespace {

struct PieceSetup {
  FaceSet faces;
  Labeling lab;
  GammaFromGraph gamma;
  HalfEdge outer;
};

PieceSetup setup_piece(const PlanarStateGraph& g, std::optional<HalfEdge> outer, VertexId basepoint,
                       bool check_blocks) {
  if (!g.signs()) throw Error(ErrorCode::Unsigned, "piece has no vertex signs");
  PieceSetup s;
  s.faces = faces(outer ? g.with_outer(outer) : g);
  s.outer = g.edge_count() ? s.faces.cycles[s.faces.outer][0] : 0;
  s.lab = label_edges(g, s.faces, check_blocks);
  s.gamma = build_gamma_from_graph(g, s.lab, basepoint);
  return s;
}

}  // namespace

Certificate decide_piece(const PlanarStateGraph& g, const PieceOptions& opts) {
  const PieceSetup s = setup_piece(g, opts.outer, opts.basepoint, opts.check_blocks);
  Certificate c;
  c.rank = rank(g);
  c.basepoint = opts.basepoint;
  c.outer = s.outer;
  c.contracted = s.gamma.contracted;
  auto folded = fold(s.gamma.gamma, opts.record_trace);
  c.trace = std::move(folded.trace);
  c.folded = std::move(folded.graph);
  c.kind = is_full_rose(c.folded, c.rank) ? CertificateKind::Rose : CertificateKind::NonRose;
  return c;
}

void verify_piece_certificate(const PlanarStateGraph& g, const Certificate& cert) {
  const PieceSetup s = setup_piece(g, g.edge_count() ? std::optional<HalfEdge>(cert.outer) : std::nullopt,
                                   cert.basepoint, true);
  if (cert.rank != rank(g)) throw Error(ErrorCode::InternalMismatch, "certificate rank differs");
  if (cert.contracted != s.gamma.contracted)
    throw Error(ErrorCode::InternalMismatch, "identity contractions differ");
  replay_folds(s.gamma.gamma, cert.trace, cert.folded);
  const bool rose = is_full_rose(cert.folded, cert.rank);
  if (rose != (cert.kind == CertificateKind::Rose))
    throw Error(ErrorCode::InternalMismatch, "certificate kind contradicts the folded graph");
}

}  // namespace statefiber
