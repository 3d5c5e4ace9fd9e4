#pragma once

#include <vector>

#include "statefiber/free_word.hpp"

namespace statefiber {

/// Directed edge labelled by generator u_gen (gen >= 1).
struct Arc {
  int src = 0;
  int dst = 0;
  int gen = 1;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Connected directed graph with generator-labelled edges and a basepoint.
struct DirectedLabeledGraph {
  int vertices = 1;
  int basepoint = 0;
  std::vector<Arc> arcs;
  friend bool operator==(const DirectedLabeledGraph&, const DirectedLabeledGraph&) = default;
};

/// Identification of arc `removed` into arc `kept` at a vertex they share
/// (any member of its class, in the input graph's vertex ids).
struct FoldStep {
  int vertex = 0;
  int kept = 0;
  int removed = 0;
  friend bool operator==(const FoldStep&, const FoldStep&) = default;
};

struct FoldResult {
  DirectedLabeledGraph graph;
  std::vector<FoldStep> trace;
};

/// Folds to completion. Pairs are processed first-in first-out, so the trace
/// is deterministic; the folded graph itself does not depend on the order.
/// Output vertices are numbered basepoint first, then by smallest member;
/// surviving arcs keep their relative order.
FoldResult fold(const DirectedLabeledGraph& g, bool record_trace = true);

bool is_folded(const DirectedLabeledGraph& g);

/// One vertex and n loops. On a folded graph this means the loops carry
/// u_1..u_n, each once.
bool is_full_rose(const DirectedLabeledGraph& folded, int n);

/// Re-applies `trace` to g with a naive reference implementation, checks each
/// step is a legal fold, that the result is folded, and that it equals
/// `expected`. Throws INTERNAL_MISMATCH otherwise.
void replay_folds(const DirectedLabeledGraph& g, const std::vector<FoldStep>& trace,
                  const DirectedLabeledGraph& expected);

/// Whether the reduced form of w is read by a basepoint loop of a folded graph.
bool spells_loop(const DirectedLabeledGraph& folded, const FreeWord& w);

/// Wedge of one loop per word at the basepoint (identity words add nothing).
/// Throws INVALID_ARGUMENT when a word uses a generator beyond u_n.
DirectedLabeledGraph build_gamma_from_words(const std::vector<FreeWord>& words, int n);

}  // namespace statefiber
