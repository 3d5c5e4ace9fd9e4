#include "statefiber/decide.hpp"

#include <random>

namespace statefiber {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Fiber: return "FIBER";
    case Verdict::NotFiber: return "NOT_FIBER";
    case Verdict::NonOrientable: return "NON_ORIENTABLE";
  }
  return "UNKNOWN";
}

Verdict parse_verdict(std::string_view s) {
  if (s == "FIBER") return Verdict::Fiber;
  if (s == "NOT_FIBER") return Verdict::NotFiber;
  if (s == "NON_ORIENTABLE") return Verdict::NonOrientable;
  throw Error(ErrorCode::Syntax, "unknown verdict '" + std::string(s) + "'");
}

int exit_code(Verdict v) noexcept { return static_cast<int>(v); }

Decision decide(const PlanarStateGraph& g, const DecideOptions& opts) {
  Decision d;
  require_valid(g);
  // Any stored signs are recomputed: a global swap of signs reverses every
  // edge and leaves the verdict unchanged.
  PlanarStateGraph signed_g;
  try {
    signed_g = assign_signs(g, 0);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonBipartite) throw;
    d.verdict = Verdict::NonOrientable;
    d.reason = e.what();
    d.pipeline.input = g;
    return d;
  }

  std::mt19937_64 rng(opts.seed.value_or(0));
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  StepChooser choose = opts.choose;
  if (opts.seed && !choose) choose = pick;
  d.pipeline = pipeline_signed(std::move(signed_g), {choose, opts.record});
  d.verdict = d.pipeline.has_distinct_parallel() ? Verdict::NotFiber : Verdict::Fiber;
  if (d.verdict == Verdict::NotFiber && opts.short_circuit) return d;

  PieceOptions po;
  po.record_trace = opts.record;
  po.check_blocks = false;  // pipeline pieces are 2-connected by construction
  for (const Piece& p : d.pipeline.irreducible) {
    if (opts.seed) {
      po.basepoint = static_cast<VertexId>(pick(p.graph.vertex_count()));
      const auto f = faces(p.graph);
      po.outer = f.cycles[pick(f.face_count())][0];
    }
    d.pieces.push_back(decide_piece(p.graph, po));
    if (d.pieces.back().kind == CertificateKind::NonRose) {
      d.verdict = Verdict::NotFiber;
      if (opts.short_circuit) break;
    }
  }
  return d;
}

Verdict decide_verdict(const PlanarStateGraph& g) {
  DecideOptions o;
  o.record = false;
  o.short_circuit = true;
  return decide(g, o).verdict;
}

}  // namespace statefiber
