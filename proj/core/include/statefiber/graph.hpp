#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "statefiber/error.hpp"

namespace statefiber {

enum class EdgeLabel : std::uint8_t { A, B };
enum class VertexSign : std::uint8_t { Plus, Minus };

constexpr EdgeLabel opposite(EdgeLabel l) noexcept {
  return l == EdgeLabel::A ? EdgeLabel::B : EdgeLabel::A;
}
constexpr VertexSign opposite(VertexSign s) noexcept {
  return s == VertexSign::Plus ? VertexSign::Minus : VertexSign::Plus;
}
char to_char(EdgeLabel l) noexcept;
EdgeLabel parse_label(char c);

using VertexId = int;
using EdgeId = int;
/// Half-edge (dart) index. Edge e owns half-edges 2e and 2e+1; the twin of h is h ^ 1.
using HalfEdge = int;

constexpr HalfEdge twin(HalfEdge h) noexcept { return h ^ 1; }
constexpr EdgeId edge_of(HalfEdge h) noexcept { return h >> 1; }

/// Connected multigraph with a rotation system (counterclockwise cyclic order of
/// half-edges around each vertex) and A/B edge labels. Loops and parallel edges
/// are allowed. Immutable once built; transformations return new graphs.
class PlanarStateGraph {
 public:
  PlanarStateGraph() = default;

  /// Throws MALFORMED_ROTATION unless every half-edge 0..2E-1 occurs in exactly
  /// one rotation. `outer`, when given, is any half-edge traversing the outer face.
  PlanarStateGraph(std::vector<std::vector<HalfEdge>> rotation, std::vector<EdgeLabel> labels,
                   std::optional<HalfEdge> outer = std::nullopt);

  int vertex_count() const noexcept { return static_cast<int>(rotation_.size()); }
  int edge_count() const noexcept { return static_cast<int>(labels_.size()); }
  int half_edge_count() const noexcept { return 2 * edge_count(); }

  const std::vector<HalfEdge>& rotation(VertexId v) const { return rotation_[v]; }
  const std::vector<std::vector<HalfEdge>>& rotations() const noexcept { return rotation_; }
  const std::vector<EdgeLabel>& labels() const noexcept { return labels_; }
  EdgeLabel label(EdgeId e) const { return labels_[e]; }
  int degree(VertexId v) const { return static_cast<int>(rotation_[v].size()); }

  VertexId origin(HalfEdge h) const { return origin_[h]; }
  VertexId target(HalfEdge h) const { return origin_[twin(h)]; }
  bool is_loop(EdgeId e) const { return origin_[2 * e] == origin_[2 * e + 1]; }

  /// Counterclockwise successor / predecessor of h around its origin.
  HalfEdge succ(HalfEdge h) const;
  HalfEdge pred(HalfEdge h) const;
  /// Face-traversal successor: the rotation successor of the reversal.
  HalfEdge next_in_face(HalfEdge h) const { return succ(twin(h)); }

  const std::optional<HalfEdge>& outer() const noexcept { return outer_; }
  const std::optional<std::vector<VertexSign>>& signs() const noexcept { return signs_; }
  VertexSign sign(VertexId v) const;

  PlanarStateGraph with_outer(std::optional<HalfEdge> outer) const;
  PlanarStateGraph with_signs(std::vector<VertexSign> signs) const;
  PlanarStateGraph without_signs() const;

  friend bool operator==(const PlanarStateGraph&, const PlanarStateGraph&) = default;

 private:
  std::vector<std::vector<HalfEdge>> rotation_;
  std::vector<EdgeLabel> labels_;
  std::optional<HalfEdge> outer_;
  std::optional<std::vector<VertexSign>> signs_;
  std::vector<VertexId> origin_;
  std::vector<int> position_;
};

struct ValidationReport {
  bool ok = false;
  std::optional<ErrorCode> error;
  std::string message;
  bool connected = false;
  bool rotation_consistent = false;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
};

/// Face cycles of the rotation system. Each cycle lists half-edges in traversal
/// order; the face of h lies to the right of h. Bounded faces carry region
/// numbers 1..n, the outer face region 0.
struct FaceSet {
  std::vector<std::vector<HalfEdge>> cycles;
  std::vector<int> face_of;  // per half-edge
  int outer = 0;             // index into cycles
  std::vector<int> region;   // per face

  int face_count() const noexcept { return static_cast<int>(cycles.size()); }
  int bounded_count() const noexcept { return face_count() - 1; }
  int region_right(HalfEdge h) const { return region[face_of[h]]; }
  int region_left(HalfEdge h) const { return region[face_of[twin(h)]]; }
  /// Face index carrying region number r.
  int face_of_region(int r) const;

  /// Renumbers bounded regions: anchors[i] is a half-edge on the face that
  /// becomes region i+1. Every bounded face must be named exactly once.
  FaceSet renumbered(std::span<const HalfEdge> anchors) const;
};

ValidationReport validate(const PlanarStateGraph& g);
/// Throws the report's error when g is invalid.
void require_valid(const PlanarStateGraph& g);

/// Rotation-system face traversal. Outer face is g.outer() when set, otherwise the
/// longest face (first in discovery order on ties).
FaceSet faces(const PlanarStateGraph& g);
int count_faces(const PlanarStateGraph& g);

/// E - V + 1 for a connected graph.
int rank(const PlanarStateGraph& g);

/// Two-colouring with `basepoint` = PLUS. Throws NON_BIPARTITE on an odd cycle or loop.
PlanarStateGraph assign_signs(const PlanarStateGraph& g, VertexId basepoint = 0);

// ---- structural edits (rotation preserving) ----

/// Removes the given edges; surviving edges and vertices keep relative order.
/// Vertices left isolated are dropped unless they were the only vertex.
/// `edge_map` (optional) receives old->new edge ids (-1 for removed).
PlanarStateGraph remove_edges(const PlanarStateGraph& g, std::span<const EdgeId> edges,
                              std::vector<EdgeId>* edge_map = nullptr,
                              std::vector<VertexId>* vertex_map = nullptr);

/// Contracts a non-loop edge, splicing the rotations of its endpoints.
PlanarStateGraph contract_edge(const PlanarStateGraph& g, EdgeId e,
                               std::vector<EdgeId>* edge_map = nullptr,
                               std::vector<VertexId>* vertex_map = nullptr);

/// Subgraph on an edge subset with the restricted rotation system.
PlanarStateGraph edge_subgraph(const PlanarStateGraph& g, std::span<const EdgeId> edges,
                               std::vector<VertexId>* vertex_map = nullptr);

/// Canonical code of the labelled rotation system, invariant under relabelling of
/// vertices and edges (outer face and signs ignored). Equal codes iff isomorphic
/// as labelled maps, for connected graphs.
std::string canonical_code(const PlanarStateGraph& g);

}  // namespace statefiber
