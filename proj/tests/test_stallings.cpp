#include <random>

#include "doctest.h"
#include "statefiber/decompose.hpp"
#include "statefiber/stallings.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace statefiber;
using fixtures::labels_of;

namespace {

const char* const kCubeWords[] = {"u1^-1 u5 u1^-1", "u2 u5^-1 u1", "u3 u2^-1", "u1 u4^-1 u3",
                                  "u1 u3^-1 u4 u1^-1"};

std::vector<FreeWord> cube_words() {
  std::vector<FreeWord> w;
  for (const char* s : kCubeWords) w.push_back(parse_word(s));
  return w;
}

FaceSet cube_faces(const PlanarStateGraph& g) {
  const auto anchors = fixtures::cube_region_anchors();
  return faces(g).renumbered(anchors);
}

template <class Rng>
FreeWord random_reduced(Rng& rng, int len, int gens) {
  FreeWord w;
  while (static_cast<int>(w.size()) < len) {
    const Letter l{std::uniform_int_distribution<int>(1, gens)(rng), std::bernoulli_distribution(0.5)(rng) ? 1 : -1};
    if (!w.empty() && w.back() == l.inverse()) continue;
    w.push_back(l);
  }
  return w;
}

}  // namespace

TEST_CASE("free words") {
  CHECK(parse_word("u1^-1 u5 u1^-1") == FreeWord{{1, -1}, {5, 1}, {1, -1}});
  CHECK(parse_word("u1^-1u5u1^-1") == parse_word("u1^-1 u5 u1^-1"));
  CHECK(parse_word("u2^3") == FreeWord{{2, 1}, {2, 1}, {2, 1}});
  CHECK(parse_word("").empty());
  CHECK(parse_word(" 1 ").empty());
  CHECK(format_word(parse_word("u2^-2 u3")) == "u2^-2 u3");
  CHECK(format_word({}) == "1");
  CHECK(reduce(parse_word("u1 u2 u2^-1 u1^-1 u3")) == parse_word("u3"));
  CHECK(is_reduced(parse_word("u1 u2 u1")));
  CHECK_FALSE(is_reduced(parse_word("u1 u1^-1")));
  CHECK(reduce(concat(parse_word("u1 u4^-1 u3"), inverse(parse_word("u1 u4^-1 u3")))).empty());
  CHECK(parse_words("u1; u2 ;; u3^-1").size() == 3);
  CHECK_THROWS_AS(parse_word("x1"), Error);
  CHECK_THROWS_AS(parse_word("u0"), Error);
  CHECK_THROWS_AS(parse_word("u1^0"), Error);
}

TEST_CASE("the cube: signs, regions, and the five region-boundary words") {
  const auto g = assign_signs(fixtures::cube(), 0);
  const char* expect_signs = "+-+--+-+";  // x y z t w p q s
  for (int v = 0; v < 8; ++v) CHECK((g.sign(v) == VertexSign::Plus) == (expect_signs[v] == '+'));
  CHECK(rank(g) == 5);

  const auto f = cube_faces(g);
  CHECK(f.bounded_count() == 5);
  const auto lab = label_edges(g, f);
  // Letters of e1..e12 (0 = identity), read off the drawing by hand.
  CHECK(lab.letter == std::vector<int>{0, 0, 3, 0, 1, 1, 2, 3, 5, 5, 3, 4});

  // beta_1, beta_4 trivial; beta_2 = e1; beta_3 = e1 e2; beta_5 = e5.
  const std::vector<EdgePath> connectors = {{}, {0}, {0, 3}, {}, {8}};
  const auto gens = region_generators(g, f, 0, connectors);
  REQUIRE(gens.size() == 5);
  const auto want = cube_words();
  for (int i = 0; i < 5; ++i) {
    CAPTURE(i);
    CHECK(format_word(phi(g, gens[i], lab)) == format_word(reduce(want[i])));
  }
}

TEST_CASE("folding the five cube words gives a rose with five petals") {
  const auto gamma = build_gamma_from_words(cube_words(), 5);
  CHECK(gamma.vertices == 1 + (2 + 2 + 1 + 2 + 3));
  std::vector<int> lengths;
  for (const auto& w : cube_words()) lengths.push_back(static_cast<int>(w.size()));
  CHECK(lengths == std::vector<int>{3, 3, 2, 3, 4});
  const auto r = fold(gamma);
  CHECK(is_folded(r.graph));
  CHECK(is_full_rose(r.graph, 5));
  replay_folds(gamma, r.trace, r.graph);

  const auto ab = abelianize(cube_words(), 5);
  CHECK(std::abs(ab.det) == 1);
  CHECK(ab.det == oracles::cofactor_det(ab.matrix));
}

TEST_CASE("decide_piece on the cube, with every outer face and basepoint") {
  const auto g = assign_signs(fixtures::cube(), 0);
  const auto fs = faces(g);
  for (int face = 0; face < fs.face_count(); ++face)
    for (VertexId b = 0; b < g.vertex_count(); ++b) {
      PieceOptions o;
      o.basepoint = b;
      o.outer = fs.cycles[face][0];
      const auto c = decide_piece(g, o);
      CHECK(c.kind == CertificateKind::Rose);
      verify_piece_certificate(g, c);
    }
}

TEST_CASE("labels and phi on small cycles") {
  SUBCASE("a single edge reads the identity") {
    const auto g = assign_signs(PlanarStateGraph({{0}, {1}}, labels_of("A")));
    CHECK(label_edges(g, faces(g)).letter == std::vector<int>{0});
  }
  SUBCASE("2-cycle AA: one edge reads u1, the other the identity") {
    const auto g = assign_signs(fixtures::cycle(labels_of("AA")));
    const auto lab = label_edges(g, faces(g));
    CHECK(lab.regions == 1);
    CHECK(std::count(lab.letter.begin(), lab.letter.end(), 1) == 1);
    CHECK(std::count(lab.letter.begin(), lab.letter.end(), 0) == 1);
    const auto gens = generators(g, 0);
    REQUIRE(gens.size() == 1);
    const auto w = phi(g, gens[0], lab);
    REQUIRE(w.size() == 1);
    CHECK(w[0].gen == 1);
    const auto gg = build_gamma_from_graph(g, lab, 0);
    CHECK(gg.gamma.vertices == 1);
    CHECK(gg.gamma.arcs.size() == 1);
    CHECK(decide_piece(g).kind == CertificateKind::Rose);
  }
  SUBCASE("6-cycle all A is not a fiber") {
    const auto g = assign_signs(fixtures::cycle(labels_of("AAAAAA")));
    CHECK(decide_piece(g).kind == CertificateKind::NonRose);
  }
  SUBCASE("all-identity walk gives the empty word") {
    const auto g = assign_signs(PlanarStateGraph({{0}, {1}}, labels_of("B")));
    CHECK(phi(g, {0, 1}, label_edges(g, faces(g))).empty());
  }
  SUBCASE("open walks are rejected") {
    const auto g = assign_signs(fixtures::cycle(labels_of("AAAA")));
    const auto lab = label_edges(g, faces(g));
    try {
      phi(g, {0, 2}, lab);
      FAIL("expected PATH_NOT_CLOSED");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PathNotClosed);
    }
  }
  SUBCASE("preconditions") {
    const auto g = fixtures::cycle(labels_of("AA"));
    CHECK_THROWS_AS(label_edges(g, faces(g)), Error);  // unsigned
    const auto bowtie = assign_signs(PlanarStateGraph({{0, 2, 4, 6}, {1, 3}, {5, 7}}, labels_of("AAAA")));
    try {
      label_edges(bowtie, faces(bowtie));
      FAIL("expected HAS_CUT_VERTEX");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::HasCutVertex);
    }
  }
}

TEST_CASE("abelianize and determinant") {
  CHECK(abelianize({parse_word("u1"), parse_word("u2")}, 2).det == 1);
  CHECK(abelianize({parse_word("u1^2")}, 1).det == 2);
  try {
    abelianize({parse_word("u1")}, 2);
    FAIL("expected NON_SQUARE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquare);
  }
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
    for (auto& row : m)
      for (auto& x : row) x = std::uniform_int_distribution<int>(-4, 4)(rng);
    CHECK(determinant(m) == oracles::cofactor_det(m));
  }
}

TEST_CASE("graph and word constructions agree on random planar pieces") {
  std::mt19937 rng(77);
  int tested = 0, roses = 0;
  while (tested < 300) {
    const auto g0 = fixtures::random_plane_bipartite(rng, 2 + static_cast<int>(rng() % 10), 0.7);
    if (split_cut_vertices(g0).size() != 1 || rank(g0) < 1) continue;
    const auto g = assign_signs(g0);
    ++tested;
    const auto f = faces(g);
    const auto lab = label_edges(g, f);
    const auto via_graph = decide_piece(g);
    verify_piece_certificate(g, via_graph);

    std::vector<FreeWord> words;
    for (const auto& p : generators(g, 0)) words.push_back(phi(g, p, lab));
    const bool via_words = is_full_rose(fold(build_gamma_from_words(words, rank(g))).graph, rank(g));
    CHECK(via_words == (via_graph.kind == CertificateKind::Rose));

    std::vector<FreeWord> region_words;
    for (const auto& p : region_generators(g, f, 0)) region_words.push_back(phi(g, p, lab));
    const bool via_regions = is_full_rose(fold(build_gamma_from_words(region_words, rank(g))).graph, rank(g));
    CHECK(via_regions == via_words);

    if (via_words) {
      ++roses;
      CHECK(std::abs(abelianize(words, rank(g)).det) == 1);
    }
  }
  CHECK(roses > 0);
}

TEST_CASE("folding preserves the loop language") {
  std::mt19937 rng(99);
  int members = 0, checks = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int gens = 1 + trial % 3;
    std::vector<FreeWord> words;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      // Unreduced words exercise cancellation inside Gamma.
      FreeWord w = random_reduced(rng, 1 + static_cast<int>(rng() % 4), gens);
      if (rng() % 2) w = concat(w, concat(parse_word("u1 u1^-1"), w));
      words.push_back(w);
    }
    const auto gamma = build_gamma_from_words(words, gens);
    const auto folded = fold(gamma).graph;
    const oracles::LoopLanguage oracle(gamma);
    for (int q = 0; q < 30; ++q) {
      FreeWord w;
      if (q % 2) {
        for (int j = 0; j < 3; ++j) {
          const auto& pick = words[rng() % words.size()];
          w = concat(w, rng() % 2 ? pick : inverse(pick));
        }
        w = reduce(w);
      } else {
        w = random_reduced(rng, static_cast<int>(rng() % 8), gens);
      }
      const bool in = oracle.accepts(w);
      members += in;
      ++checks;
      CHECK(in == spells_loop(folded, w));
    }
  }
  CHECK(members > 0);
  CHECK(members < checks);
}
