#include "statefiber/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace statefiber {

char to_char(EdgeLabel l) noexcept { return l == EdgeLabel::A ? 'A' : 'B'; }

EdgeLabel parse_label(char c) {
  if (c == 'A' || c == 'a') return EdgeLabel::A;
  if (c == 'B' || c == 'b') return EdgeLabel::B;
  throw Error(ErrorCode::Syntax, std::string("bad edge label '") + c + "'");
}

PlanarStateGraph::PlanarStateGraph(std::vector<std::vector<HalfEdge>> rotation,
                                   std::vector<EdgeLabel> labels, std::optional<HalfEdge> outer)
    : rotation_(std::move(rotation)), labels_(std::move(labels)), outer_(outer) {
  const int halves = half_edge_count();
  origin_.assign(halves, -1);
  position_.assign(halves, -1);
  for (VertexId v = 0; v < vertex_count(); ++v) {
    const auto& rot = rotation_[v];
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
      const HalfEdge h = rot[i];
      if (h < 0 || h >= halves)
        throw Error(ErrorCode::MalformedRotation,
                    "half-edge " + std::to_string(h) + " at vertex " + std::to_string(v) +
                        " does not belong to any edge");
      if (origin_[h] != -1)
        throw Error(ErrorCode::MalformedRotation,
                    "half-edge " + std::to_string(h) + " appears twice in the rotation system");
      origin_[h] = v;
      position_[h] = i;
    }
  }
  for (HalfEdge h = 0; h < halves; ++h)
    if (origin_[h] == -1)
      throw Error(ErrorCode::MalformedRotation,
                  "half-edge " + std::to_string(h) + " missing from every rotation");
  if (outer_ && (*outer_ < 0 || *outer_ >= halves))
    throw Error(ErrorCode::MalformedRotation, "outer half-edge out of range");
}

HalfEdge PlanarStateGraph::succ(HalfEdge h) const {
  const auto& rot = rotation_[origin_[h]];
  const int i = position_[h] + 1;
  return rot[i == static_cast<int>(rot.size()) ? 0 : i];
}

HalfEdge PlanarStateGraph::pred(HalfEdge h) const {
  const auto& rot = rotation_[origin_[h]];
  const int i = position_[h];
  return rot[i == 0 ? rot.size() - 1 : i - 1];
}

VertexSign PlanarStateGraph::sign(VertexId v) const {
  if (!signs_) throw Error(ErrorCode::Unsigned, "graph has no vertex signs");
  return (*signs_)[v];
}

PlanarStateGraph PlanarStateGraph::with_outer(std::optional<HalfEdge> outer) const {
  PlanarStateGraph g = *this;
  if (outer && (*outer < 0 || *outer >= half_edge_count()))
    throw Error(ErrorCode::MalformedRotation, "outer half-edge out of range");
  g.outer_ = outer;
  return g;
}

PlanarStateGraph PlanarStateGraph::with_signs(std::vector<VertexSign> signs) const {
  if (static_cast<int>(signs.size()) != vertex_count())
    throw Error(ErrorCode::InvalidArgument, "sign vector length differs from vertex count");
  PlanarStateGraph g = *this;
  g.signs_ = std::move(signs);
  return g;
}

PlanarStateGraph PlanarStateGraph::without_signs() const {
  PlanarStateGraph g = *this;
  g.signs_.reset();
  return g;
}

// ---------------------------------------------------------------------------

namespace {

bool is_connected(const PlanarStateGraph& g) {
  if (g.vertex_count() == 0) return false;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (HalfEdge h : g.rotation(v)) {
      const VertexId w = g.target(h);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.vertex_count();
}

}  // namespace

int count_faces(const PlanarStateGraph& g) {
  if (g.edge_count() == 0) return 1;
  std::vector<char> seen(g.half_edge_count(), 0);
  int count = 0;
  for (HalfEdge h0 = 0; h0 < g.half_edge_count(); ++h0) {
    if (seen[h0]) continue;
    ++count;
    for (HalfEdge h = h0; !seen[h]; h = g.next_in_face(h)) seen[h] = 1;
  }
  return count;
}

ValidationReport validate(const PlanarStateGraph& g) {
  ValidationReport r;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();
  r.rotation_consistent = true;  // enforced at construction
  r.connected = is_connected(g);
  if (!r.connected) {
    r.error = ErrorCode::Disconnected;
    r.message = g.vertex_count() == 0 ? "graph has no vertices" : "graph is not connected";
    return r;
  }
  r.faces = count_faces(g);
  if (r.vertices - r.edges + r.faces != 2) {
    r.error = ErrorCode::NonSpherical;
    r.message = "V - E + F = " + std::to_string(r.vertices - r.edges + r.faces) + ", expected 2";
    return r;
  }
  r.ok = true;
  return r;
}

void require_valid(const PlanarStateGraph& g) {
  const auto r = validate(g);
  if (!r.ok) throw Error(*r.error, r.message);
}

FaceSet faces(const PlanarStateGraph& g) {
  FaceSet fs;
  fs.face_of.assign(g.half_edge_count(), -1);
  if (g.edge_count() == 0) {
    fs.cycles.emplace_back();
    fs.outer = 0;
    fs.region = {0};
    return fs;
  }
  for (HalfEdge h0 = 0; h0 < g.half_edge_count(); ++h0) {
    if (fs.face_of[h0] != -1) continue;
    const int id = fs.face_count();
    auto& cycle = fs.cycles.emplace_back();
    for (HalfEdge h = h0; fs.face_of[h] == -1; h = g.next_in_face(h)) {
      fs.face_of[h] = id;
      cycle.push_back(h);
    }
  }
  if (g.outer()) {
    fs.outer = fs.face_of[*g.outer()];
  } else {
    fs.outer = 0;
    for (int f = 1; f < fs.face_count(); ++f)
      if (fs.cycles[f].size() > fs.cycles[fs.outer].size()) fs.outer = f;
  }
  fs.region.assign(fs.face_count(), 0);
  int next = 1;
  for (int f = 0; f < fs.face_count(); ++f)
    if (f != fs.outer) fs.region[f] = next++;
  return fs;
}

int FaceSet::face_of_region(int r) const {
  for (int f = 0; f < face_count(); ++f)
    if (region[f] == r) return f;
  throw Error(ErrorCode::InvalidArgument, "no face with region " + std::to_string(r));
}

FaceSet FaceSet::renumbered(std::span<const HalfEdge> anchors) const {
  if (static_cast<int>(anchors.size()) != bounded_count())
    throw Error(ErrorCode::InvalidArgument, "need one anchor per bounded face");
  FaceSet out = *this;
  std::fill(out.region.begin(), out.region.end(), -1);
  out.region[outer] = 0;
  for (int i = 0; i < static_cast<int>(anchors.size()); ++i) {
    const HalfEdge h = anchors[i];
    if (h < 0 || h >= static_cast<int>(face_of.size()))
      throw Error(ErrorCode::InvalidArgument, "anchor out of range");
    const int f = face_of[h];
    if (out.region[f] != -1)
      throw Error(ErrorCode::InvalidArgument, "anchor names the outer face or repeats a face");
    out.region[f] = i + 1;
  }
  return out;
}

int rank(const PlanarStateGraph& g) { return g.edge_count() - g.vertex_count() + 1; }

PlanarStateGraph assign_signs(const PlanarStateGraph& g, VertexId basepoint) {
  if (basepoint < 0 || basepoint >= g.vertex_count())
    throw Error(ErrorCode::InvalidArgument, "basepoint out of range");
  std::vector<int> color(g.vertex_count(), -1);
  std::queue<VertexId> queue;
  color[basepoint] = 0;
  queue.push(basepoint);
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop();
    for (HalfEdge h : g.rotation(v)) {
      const VertexId w = g.target(h);
      if (color[w] == -1) {
        color[w] = 1 - color[v];
        queue.push(w);
      } else if (color[w] == color[v]) {
        throw Error(ErrorCode::NonBipartite,
                    "edge " + std::to_string(edge_of(h)) + " closes an odd cycle");
      }
    }
  }
  std::vector<VertexSign> signs(g.vertex_count(), VertexSign::Plus);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (color[v] == -1) throw Error(ErrorCode::Disconnected, "graph is not connected");
    signs[v] = color[v] == 0 ? VertexSign::Plus : VertexSign::Minus;
  }
  return g.with_signs(std::move(signs));
}

// ---------------------------------------------------------------------------

namespace {

// Rebuilds a graph after edge/vertex renumbering. `rotation` holds old half-edge
// ids; `edge_map` maps old edge -> new edge (or -1).
PlanarStateGraph rebuild(const PlanarStateGraph& g, const std::vector<std::vector<HalfEdge>>& rotation,
                         const std::vector<VertexId>& kept_vertices, const std::vector<EdgeId>& edge_map,
                         int new_edges) {
  std::vector<std::vector<HalfEdge>> rot(rotation.size());
  for (std::size_t v = 0; v < rotation.size(); ++v) {
    rot[v].reserve(rotation[v].size());
    for (HalfEdge h : rotation[v]) rot[v].push_back(2 * edge_map[edge_of(h)] + (h & 1));
  }
  std::vector<EdgeLabel> labels(new_edges);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (edge_map[e] >= 0) labels[edge_map[e]] = g.label(e);
  std::optional<HalfEdge> outer;
  if (g.outer() && edge_map[edge_of(*g.outer())] >= 0)
    outer = 2 * edge_map[edge_of(*g.outer())] + (*g.outer() & 1);
  PlanarStateGraph out(std::move(rot), std::move(labels), outer);
  if (g.signs()) {
    std::vector<VertexSign> signs;
    signs.reserve(kept_vertices.size());
    for (VertexId v : kept_vertices) signs.push_back((*g.signs())[v]);
    out = out.with_signs(std::move(signs));
  }
  return out;
}

}  // namespace

PlanarStateGraph remove_edges(const PlanarStateGraph& g, std::span<const EdgeId> edges,
                              std::vector<EdgeId>* edge_map_out,
                              std::vector<VertexId>* vertex_map_out) {
  std::vector<char> removed(g.edge_count(), 0);
  for (EdgeId e : edges) removed[e] = 1;
  std::vector<EdgeId> edge_map(g.edge_count(), -1);
  int next = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!removed[e]) edge_map[e] = next++;

  std::vector<std::vector<HalfEdge>> rotation;
  std::vector<VertexId> kept;
  std::vector<VertexId> vertex_map(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<HalfEdge> rot;
    for (HalfEdge h : g.rotation(v))
      if (!removed[edge_of(h)]) rot.push_back(h);
    if (rot.empty() && g.degree(v) > 0) continue;
    vertex_map[v] = static_cast<VertexId>(kept.size());
    kept.push_back(v);
    rotation.push_back(std::move(rot));
  }
  if (kept.empty() && g.vertex_count() > 0) {
    vertex_map[0] = 0;
    kept.push_back(0);
    rotation.emplace_back();
  }
  if (edge_map_out) *edge_map_out = edge_map;
  if (vertex_map_out) *vertex_map_out = vertex_map;
  return rebuild(g, rotation, kept, edge_map, next);
}

PlanarStateGraph contract_edge(const PlanarStateGraph& g, EdgeId e, std::vector<EdgeId>* edge_map_out,
                               std::vector<VertexId>* vertex_map_out) {
  if (g.is_loop(e)) throw Error(ErrorCode::InvalidArgument, "cannot contract a loop");
  HalfEdge hu = 2 * e, hv = 2 * e + 1;
  VertexId u = g.origin(hu), v = g.origin(hv);
  if (v < u) {
    std::swap(u, v);
    std::swap(hu, hv);
  }
  std::vector<HalfEdge> merged;
  merged.reserve(g.degree(u) + g.degree(v) - 2);
  for (HalfEdge h = g.succ(hu); h != hu; h = g.succ(h)) merged.push_back(h);
  for (HalfEdge h = g.succ(hv); h != hv; h = g.succ(h)) merged.push_back(h);

  std::vector<EdgeId> edge_map(g.edge_count(), -1);
  int next = 0;
  for (EdgeId f = 0; f < g.edge_count(); ++f)
    if (f != e) edge_map[f] = next++;

  std::vector<std::vector<HalfEdge>> rotation;
  std::vector<VertexId> kept;
  std::vector<VertexId> vertex_map(g.vertex_count(), -1);
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    if (w == v) continue;
    vertex_map[w] = static_cast<VertexId>(kept.size());
    kept.push_back(w);
    rotation.push_back(w == u ? merged : g.rotation(w));
  }
  vertex_map[v] = vertex_map[u];
  if (edge_map_out) *edge_map_out = edge_map;
  if (vertex_map_out) *vertex_map_out = vertex_map;
  return rebuild(g, rotation, kept, edge_map, next);
}

PlanarStateGraph edge_subgraph(const PlanarStateGraph& g, std::span<const EdgeId> edges,
                               std::vector<VertexId>* vertex_map_out) {
  std::vector<char> keep(g.edge_count(), 0);
  for (EdgeId e : edges) keep[e] = 1;
  std::vector<EdgeId> edge_map(g.edge_count(), -1);
  int next = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (keep[e]) edge_map[e] = next++;
  std::vector<std::vector<HalfEdge>> rotation;
  std::vector<VertexId> kept;
  std::vector<VertexId> vertex_map(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<HalfEdge> rot;
    for (HalfEdge h : g.rotation(v))
      if (keep[edge_of(h)]) rot.push_back(h);
    if (rot.empty()) continue;
    vertex_map[v] = static_cast<VertexId>(kept.size());
    kept.push_back(v);
    rotation.push_back(std::move(rot));
  }
  if (vertex_map_out) *vertex_map_out = vertex_map;
  return rebuild(g, rotation, kept, edge_map, next);
}

std::string canonical_code(const PlanarStateGraph& g) {
  if (g.edge_count() == 0) return "V" + std::to_string(g.vertex_count());
  std::vector<int> best;
  std::vector<int> dart_num(g.half_edge_count());
  std::vector<int> vertex_num(g.vertex_count());
  std::vector<HalfEdge> order;
  std::vector<int> code;
  for (HalfEdge start = 0; start < g.half_edge_count(); ++start) {
    std::fill(dart_num.begin(), dart_num.end(), -1);
    std::fill(vertex_num.begin(), vertex_num.end(), -1);
    order.clear();
    code.clear();
    std::vector<HalfEdge> entries;
    auto number_vertex = [&](HalfEdge entry) {
      const VertexId v = g.origin(entry);
      vertex_num[v] = static_cast<int>(entries.size());
      entries.push_back(entry);
      HalfEdge h = entry;
      do {
        dart_num[h] = static_cast<int>(order.size());
        order.push_back(h);
        h = g.succ(h);
      } while (h != entry);
    };
    number_vertex(start);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const HalfEdge entry = entries[i];
      code.push_back(-g.degree(g.origin(entry)) - 1);
      HalfEdge h = entry;
      do {
        if (dart_num[twin(h)] == -1) number_vertex(twin(h));
        code.push_back(2 * dart_num[twin(h)] + (g.label(edge_of(h)) == EdgeLabel::A ? 0 : 1));
        h = g.succ(h);
      } while (h != entry);
      if (!best.empty() && std::lexicographical_compare(best.begin(), best.end(), code.begin(),
                                                        code.end()))
        break;  // already worse than the best code
    }
    if (best.empty() || code < best) best = code;
  }
  std::string s;
  for (int x : best) s += std::to_string(x) + ',';
  return s;
}

}  // namespace statefiber
