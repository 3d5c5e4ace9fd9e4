#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "statefiber/decompose.hpp"
#include "support/fixtures.hpp"

using namespace statefiber;
using fixtures::labels_of;

namespace {

enum class Outcome { Fiber, NotFiber, Undecided };

Outcome early_outcome(const PipelineResult& r) {
  if (r.has_distinct_parallel()) return Outcome::NotFiber;
  return r.irreducible.empty() ? Outcome::Fiber : Outcome::Undecided;
}

std::multiset<std::string> piece_codes(const PipelineResult& r) {
  std::multiset<std::string> out;
  for (const auto& p : r.irreducible) out.insert(canonical_code(p.graph));
  return out;
}

PipelineResult run_checked(const PlanarStateGraph& g, const PipelineOptions& opts = {}) {
  auto r = pipeline(g, opts);
  verify_reduction_log(g, r.log, r.irreducible);
  return r;
}

}  // namespace

TEST_CASE("split_cut_vertices") {
  SUBCASE("2-connected graph is its own piece") {
    const auto g = fixtures::cube();
    const auto pieces = split_cut_vertices(g);
    REQUIRE(pieces.size() == 1);
    CHECK(canonical_code(pieces[0].graph) == canonical_code(g));
  }
  SUBCASE("star with three edges gives three single edges") {
    const PlanarStateGraph star({{0, 2, 4}, {1}, {3}, {5}}, labels_of("ABA"));
    const auto pieces = split_cut_vertices(star);
    REQUIRE(pieces.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(pieces[i].graph.edge_count() == 1);
      CHECK(pieces[i].origin == std::vector<EdgeId>{static_cast<EdgeId>(i)});
    }
  }
  SUBCASE("edge conservation on random graphs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto g = fixtures::random_plane_bipartite(rng, 1 + trial % 12);
      const auto pieces = split_cut_vertices(g);
      std::vector<EdgeId> all;
      for (const auto& p : pieces) {
        CHECK(validate(p.graph).ok);
        all.insert(all.end(), p.origin.begin(), p.origin.end());
      }
      std::sort(all.begin(), all.end());
      std::vector<EdgeId> expect(g.edge_count());
      for (int i = 0; i < g.edge_count(); ++i) expect[i] = i;
      CHECK(all == expect);
    }
  }
}

TEST_CASE("reduce_piece on small cycles") {
  auto reduce = [](const char* labels) {
    const auto g = assign_signs(fixtures::cycle(labels_of(labels)));
    return reduce_piece(Piece{0, g, {0, 1, 2, 3, 4, 5}});
  };
  SUBCASE("AA: delete a parallel edge, then a tree") {
    const auto r = reduce("AA");
    REQUIRE(r.verdict);
    CHECK(r.verdict->kind == EarlyKind::TreeFiber);
    REQUIRE(r.steps.size() == 2);
    CHECK(r.steps[0].kind == StepKind::DeleteParallel);
    CHECK(r.steps[0].edges == std::vector<EdgeId>{0, 1});
    CHECK(r.steps[1].kind == StepKind::Tree);
    CHECK(r.piece.graph.edge_count() == 1);
  }
  SUBCASE("AB: distinct-label bigon") {
    const auto r = reduce("AB");
    REQUIRE(r.verdict);
    CHECK(r.verdict->kind == EarlyKind::DistinctParallelNotFiber);
    CHECK(r.verdict->witness == std::vector<EdgeId>{0, 1});
  }
  SUBCASE("ABAB: one collapse leaves a distinct-label bigon") {
    const auto r = reduce("ABAB");
    REQUIRE(r.verdict);
    CHECK(r.verdict->kind == EarlyKind::DistinctParallelNotFiber);
    CHECK(r.steps[0].kind == StepKind::Collapse);
  }
  SUBCASE("AAAB: collapse leaves the Hopf band AA") {
    const auto r = reduce("AAAB");
    REQUIRE(r.verdict);
    CHECK(r.verdict->kind == EarlyKind::TreeFiber);
  }
  SUBCASE("AAAAAA is irreducible") {
    const auto r = reduce("AAAAAA");
    CHECK_FALSE(r.verdict);
    CHECK(r.steps.empty());
    CHECK(r.piece.graph.edge_count() == 6);
  }
}

TEST_CASE("pipeline examples") {
  SUBCASE("trees are fibers") {
    const PlanarStateGraph path({{0}, {1, 2}, {3, 4}, {5}}, labels_of("ABB"));
    const auto r = run_checked(path);
    CHECK(early_outcome(r) == Outcome::Fiber);
    CHECK(r.early.size() == 3);
  }
  SUBCASE("single vertex") {
    const PlanarStateGraph point({{}}, {});
    const auto r = run_checked(point);
    CHECK(early_outcome(r) == Outcome::Fiber);
  }
  SUBCASE("the cube is one irreducible piece") {
    const auto g = fixtures::cube();
    const auto r = run_checked(g);
    REQUIRE(r.irreducible.size() == 1);
    CHECK(r.early.empty());
    CHECK(canonical_code(r.irreducible[0].graph) == canonical_code(g));
  }
  SUBCASE("theta with a collapsible strand") {
    // Strands A-B, A-A, B-B: collapsing the A-B strand merges the poles and
    // leaves two Hopf bands.
    const PlanarStateGraph theta({{0, 4, 8}, {11, 7, 3}, {1, 2}, {5, 6}, {9, 10}},
                                 labels_of("ABAABB"));
    REQUIRE(validate(theta).ok);
    const auto r = run_checked(theta);
    CHECK(early_outcome(r) == Outcome::Fiber);
    CHECK(r.log[1].kind == StepKind::Collapse);
  }
  SUBCASE("collapse exposing a cut-vertex forces a re-split") {
    const auto g = fixtures::theta_strands({"AB", "AAAA", "AAAA"});
    REQUIRE(validate(g).ok);
    const auto r = run_checked(g);
    CHECK(std::count_if(r.log.begin(), r.log.end(),
                        [](const Step& s) { return s.kind == StepKind::Split && s.piece != 0; }) == 1);
    REQUIRE(r.irreducible.size() == 2);
    for (const auto& p : r.irreducible) CHECK(p.graph.edge_count() == 4);
  }
}

TEST_CASE("confluence under random step orders") {
  std::mt19937 rng(20240601);
  int decided = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = fixtures::random_plane_bipartite(rng, 2 + trial % 11, 0.6);
    const auto base = run_checked(g);
    const auto want_outcome = early_outcome(base);
    const auto want_codes = piece_codes(base);
    decided += want_outcome != Outcome::Undecided;
    for (int k = 0; k < 6; ++k) {
      std::mt19937 pick_rng(trial * 31 + k);
      PipelineOptions opts;
      opts.choose = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(pick_rng); };
      const auto r = run_checked(g, opts);
      CHECK(early_outcome(r) == want_outcome);
      if (want_outcome == Outcome::Undecided) CHECK(piece_codes(r) == want_codes);
    }
  }
  CHECK(decided > 0);
}

TEST_CASE("verify_reduction_log rejects a tampered log") {
  const auto g = fixtures::cycle(labels_of("AAAB"));
  auto r = pipeline(g);
  auto bad = r.log;
  for (auto& s : bad)
    if (s.kind == StepKind::Collapse) s.edges = {0, 2};  // not adjacent
  CHECK_THROWS_AS(verify_reduction_log(g, bad, r.irreducible), Error);
  auto truncated = r.log;
  truncated.pop_back();
  CHECK_THROWS_AS(verify_reduction_log(g, truncated, r.irreducible), Error);
}
