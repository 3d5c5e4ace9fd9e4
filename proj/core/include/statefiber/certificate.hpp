#pragma once

#include <nlohmann/json.hpp>

#include "statefiber/decide.hpp"
#include "statefiber/fold.hpp"

namespace statefiber {

/// Self-contained JSON record of a decision: the input graph, the reduction
/// log, every irreducible piece with its folding certificate, and the verdict.
/// Requires a Decision made with `record` on and without short-circuiting.
nlohmann::json certificate_to_json(const Decision& d);

/// Re-derives the verdict from a certificate with the reference replays:
/// reduction steps, fold traces and the rose test. Returns the verdict when it
/// matches the recorded one; throws INTERNAL_MISMATCH or SYNTAX otherwise.
Verdict verify_certificate(const nlohmann::json& cert);

/// Folding record for a list of words over u_1..u_n.
nlohmann::json fold_to_json(const std::vector<FreeWord>& words, int n, const FoldResult& r);

/// Rebuilds the wedge of the recorded words and replays the trace. Returns
/// whether the folded graph is the full rose.
bool verify_fold_certificate(const nlohmann::json& cert);

nlohmann::json to_json(const DirectedLabeledGraph& g);
DirectedLabeledGraph directed_graph_from_json(const nlohmann::json& j);

}  // namespace statefiber
