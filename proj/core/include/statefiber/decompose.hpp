#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "statefiber/graph.hpp"

namespace statefiber {

/// A 2-connected piece, single edge, or single vertex of a state graph.
/// `origin[e]` is the id in the pipeline's input graph of the piece's edge e.
struct Piece {
  int id = 0;
  PlanarStateGraph graph;
  std::vector<EdgeId> origin;
};

enum class StepKind { Split, DeleteParallel, DistinctParallel, Collapse, Tree, Irreducible };
std::string_view to_string(StepKind k) noexcept;
StepKind parse_step_kind(std::string_view s);

/// One entry of the reduction log. Edge ids refer to the input graph.
///   Split            children = new piece ids, edges unused
///   DeleteParallel   edges = {kept, deleted}
///   DistinctParallel edges = the bigon pair
///   Collapse         edges = the two consecutive edges, in rotation order at their middle vertex
///   Tree/Irreducible edges = the piece's remaining edges
struct Step {
  StepKind kind = StepKind::Split;
  int piece = 0;
  std::vector<EdgeId> edges;
  std::vector<int> children;

  friend bool operator==(const Step&, const Step&) = default;
};

enum class EarlyKind { TreeFiber, DistinctParallelNotFiber };

struct EarlyVerdict {
  EarlyKind kind = EarlyKind::TreeFiber;
  int piece = 0;
  std::vector<EdgeId> witness;  // bigon pair, or the edges of the tree
};

/// Picks one of `count` applicable reduction steps (returns an index < count).
/// The default takes the first.
using StepChooser = std::function<std::size_t(std::size_t count)>;

/// Blocks of g with restricted rotation systems, in order of their smallest
/// edge id; a graph without edges yields one single-vertex piece.
std::vector<Piece> split_cut_vertices(const PlanarStateGraph& g);

struct Reduction {
  Piece piece;
  std::optional<EarlyVerdict> verdict;
  std::vector<Step> steps;
};

/// Applies the bigon and consecutive-edge rules to a local fixpoint without
/// re-splitting. `p.graph` must be signed.
Reduction reduce_piece(const Piece& p, const StepChooser& choose = {});

struct PipelineOptions {
  StepChooser choose;
  bool record = true;  // fill PipelineResult::log
};

struct PipelineResult {
  PlanarStateGraph input;  // signed copy of the pipeline's input
  std::vector<Piece> irreducible;
  std::vector<EarlyVerdict> early;
  std::vector<Step> log;

  bool has_distinct_parallel() const;
};

/// Split, reduce, and re-split to a global fixpoint. Piece 0 is the input
/// graph; signs are assigned from vertex 0 when g carries none (NON_BIPARTITE).
PipelineResult pipeline(const PlanarStateGraph& g, const PipelineOptions& opts = {});

/// pipeline() for a graph already validated and signed; neither is re-checked.
PipelineResult pipeline_signed(PlanarStateGraph g, const PipelineOptions& opts = {});

/// Replays `log` on g with the slow reference operations and checks every
/// step's precondition, the early verdicts, and the reported irreducible
/// pieces. Throws INTERNAL_MISMATCH describing the first failure.
void verify_reduction_log(const PlanarStateGraph& g, const std::vector<Step>& log,
                          const std::vector<Piece>& irreducible);

}  // namespace statefiber
