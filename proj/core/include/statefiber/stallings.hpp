#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "statefiber/fold.hpp"
#include "statefiber/free_word.hpp"
#include "statefiber/graph.hpp"

namespace statefiber {

/// Per edge: the half-edge at its PLUS end (the edge is directed away from it)
/// and its letter, a bounded region index 1..n or 0 for the identity.
struct Labeling {
  std::vector<HalfEdge> plus_half;
  std::vector<int> letter;
  int regions = 0;
};

/// An A-edge reads the region on its left, a B-edge the region on its right,
/// seen along PLUS -> MINUS; the outer region reads as the identity.
/// Throws UNSIGNED, or HAS_CUT_VERTEX when `check_blocks` and g has a cut-vertex.
Labeling label_edges(const PlanarStateGraph& g, const FaceSet& f, bool check_blocks = true);

/// A walk given by the half-edges it traverses, each from its origin.
using EdgePath = std::vector<HalfEdge>;

/// Spanning-tree basis of pi_1(g, basepoint): one loop per non-tree edge, in
/// edge order. The tree defaults to breadth-first search by rotation order;
/// `tree` may name any spanning tree's edges instead.
std::vector<EdgePath> generators(const PlanarStateGraph& g, VertexId basepoint,
                                 const std::vector<EdgeId>* tree = nullptr);

/// Region-boundary basis: for bounded region i, connector beta_i from the
/// basepoint, the counterclockwise boundary loop (region on the left) from
/// beta_i's end, then beta_i reversed. Without connectors each beta_i is the
/// breadth-first tree path to the region's nearest vertex.
std::vector<EdgePath> region_generators(const PlanarStateGraph& g, const FaceSet& f, VertexId basepoint,
                                        const std::vector<EdgePath>& connectors = {});

/// Letters along a closed walk, reduced. Throws PATH_NOT_CLOSED.
FreeWord phi(const PlanarStateGraph& g, const EdgePath& path, const Labeling& lab);

struct GammaFromGraph {
  DirectedLabeledGraph gamma;
  std::vector<EdgeId> contracted;  // identity-labelled edges of g
  std::vector<int> vertex_class;   // g vertex -> gamma vertex
};

/// g with edges directed PLUS -> MINUS and labelled by their letters, identity
/// edges contracted. Gamma vertices are numbered by smallest member.
GammaFromGraph build_gamma_from_graph(const PlanarStateGraph& g, const Labeling& lab, VertexId basepoint);

struct Abelianization {
  std::vector<std::vector<std::int64_t>> matrix;  // row per word, column per generator
  std::int64_t det = 0;
};

/// Exponent-sum matrix and its exact determinant (fraction-free elimination).
/// Throws NON_SQUARE when the word count differs from n.
Abelianization abelianize(const std::vector<FreeWord>& words, int n);

/// Exact determinant of a square integer matrix. Throws INVALID_ARGUMENT on
/// 64-bit overflow.
std::int64_t determinant(std::vector<std::vector<std::int64_t>> m);

enum class CertificateKind { Rose, NonRose };

struct Certificate {
  CertificateKind kind = CertificateKind::NonRose;
  int rank = 0;
  VertexId basepoint = 0;
  HalfEdge outer = 0;  // a half-edge whose right-hand face was taken as outer
  std::vector<EdgeId> contracted;
  std::vector<FoldStep> trace;
  DirectedLabeledGraph folded;
};

struct PieceOptions {
  VertexId basepoint = 0;
  std::optional<HalfEdge> outer;  // overrides the graph's outer face
  bool record_trace = true;
  bool check_blocks = true;
};

/// Fibering of one irreducible piece: folds Gamma and tests for the full rose
/// on rank(g) petals. Requires a signed 2-connected graph of rank >= 1.
Certificate decide_piece(const PlanarStateGraph& g, const PieceOptions& opts = {});

/// Rebuilds Gamma from g and replays the certificate. Throws INTERNAL_MISMATCH.
void verify_piece_certificate(const PlanarStateGraph& g, const Certificate& cert);

}  // namespace statefiber
