#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "statefiber/decompose.hpp"
#include "statefiber/stallings.hpp"

namespace statefiber {

enum class Verdict { Fiber, NotFiber, NonOrientable };
std::string_view to_string(Verdict v) noexcept;
Verdict parse_verdict(std::string_view s);

/// Process exit code for a verdict: 0, 1 or 2.
int exit_code(Verdict v) noexcept;

struct DecideOptions {
  StepChooser choose;
  bool record = true;  // keep the reduction log and fold traces
  /// Stop folding pieces once one is known not to fiber.
  bool short_circuit = false;
  /// When set, reduction order, piece basepoints and outer faces are drawn
  /// from this seed instead of taking the first choice each time.
  std::optional<std::uint64_t> seed;
};

struct Decision {
  Verdict verdict = Verdict::Fiber;
  std::string reason;  // why the surface is non-orientable, when it is
  PipelineResult pipeline;  // only `input` is set for a non-orientable graph
  std::vector<Certificate> pieces;  // parallel to pipeline.irreducible
};

/// Full decision: sign the graph (an odd cycle means a non-orientable
/// surface), reduce, then fold each irreducible piece from its vertex 0.
/// FIBER iff no early NOT_FIBER verdict and every piece folds to a rose.
Decision decide(const PlanarStateGraph& g, const DecideOptions& opts = {});

/// Verdict only, without logs or traces.
Verdict decide_verdict(const PlanarStateGraph& g);

}  // namespace statefiber
