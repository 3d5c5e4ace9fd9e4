#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "statefiber/free_word.hpp"
#include "statefiber/graph.hpp"

namespace statefiber {

// ---- cycles ----

/// Even cycles fiber iff the A and B counts differ by exactly two.
/// Throws ODD_CYCLE for odd length and INVALID_ARGUMENT when empty.
bool cycle_fiber(std::span<const EdgeLabel> labels);

/// Vertex i joins vertex i+1 by edge i; vertex 0 is PLUS.
PlanarStateGraph cycle_graph(std::span<const EdgeLabel> labels);

// ---- generalized theta graphs and pretzel links ----

struct Strand {
  int vertices = 0;  // interior vertices; the strand has vertices + 1 edges
  EdgeLabel label = EdgeLabel::A;
  friend bool operator==(const Strand&, const Strand&) = default;
};

struct ThetaSpec {
  std::vector<Strand> strands;
  friend bool operator==(const ThetaSpec&, const ThetaSpec&) = default;
};

/// Throws TOO_FEW_STRANDS (< 3), PARITY (mixed vertex-count parity) or
/// INVALID_ARGUMENT (negative count).
void validate_theta(const ThetaSpec& spec);

/// Comma-separated strands written as their edge labels, e.g. "A,BBB,A".
/// Throws UNREDUCED when a strand mixes labels, SYNTAX on bad characters.
ThetaSpec parse_theta(std::string_view text);
std::string format_theta(const ThetaSpec& spec);

/// Poles 0 (PLUS) and 1. Strands leave pole 0 in counterclockwise order and
/// reach pole 1 in the reverse order, so consecutive strands bound the bounded
/// faces and the first and last strands bound the outer face.
PlanarStateGraph theta_graph(const ThetaSpec& spec);

/// Crossings per twist region: p_i = +-(vertices + 1), positive for A.
std::vector<int> theta_to_pretzel(const ThetaSpec& spec);

/// Classification of fibered checkerboard surfaces of pretzel links. The three
/// listed forms are matched up to cyclic rotation and reversal of the tuple,
/// which are isotopies of the pretzel link.
bool pretzel_fiber(std::span<const int> p);

/// Closed-form verdict for a theta graph with single-label strands, read up to
/// the cyclic symmetry of the strands.
bool theta_fiber(const ThetaSpec& spec);

// ---- 2-bridge links ----

/// Coefficients in written order a_{n-1}, ..., a_1.
struct ContinuedFraction {
  std::vector<int> coefficients;

  int length() const noexcept { return static_cast<int>(coefficients.size()); }  // n - 1
  /// a_i for 1 <= i <= n - 1.
  int a(int i) const { return coefficients[coefficients.size() - static_cast<std::size_t>(i)]; }
  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

/// Throws INVALID_CF unless all a_i are nonzero, |a_1|, |a_{n-1}| >= 2, every
/// even-index |a_i| is even, except a final even-index coefficient which must be odd.
void validate_cf(const ContinuedFraction& cf);
ContinuedFraction parse_cf(std::string_view text);  // "-3,4,-2"
std::string format_cf(const ContinuedFraction& cf);

/// State graph of the bounded checkerboard surface of K[a_{n-1}, ..., a_1].
/// Vertex 0 is the PLUS basepoint x; vertices 1..g are the far ends y_j of the
/// groups of b_{2j-1} parallel edges; strand vertices follow.
PlanarStateGraph two_bridge_graph(const ContinuedFraction& cf);

/// p on the diagonal, q above, r below.
struct TridiagonalMatrix {
  std::vector<std::int64_t> p;
  std::vector<std::int64_t> q;
  std::vector<std::int64_t> r;

  int size() const noexcept { return static_cast<int>(p.size()); }
  std::vector<std::vector<std::int64_t>> dense() const;
};

struct TwoBridgeMatrix {
  std::vector<FreeWord> words;  // images of the region loops gamma_1..gamma_m
  TridiagonalMatrix matrix;
  std::int64_t det = 1;
};

/// Region words from the closed-form letter tables, their exponent-sum matrix
/// and its determinant (the product of the diagonal).
TwoBridgeMatrix two_bridge_matrix(const ContinuedFraction& cf);

/// Sign-table criterion on the coefficients alone.
bool two_bridge_table(const ContinuedFraction& cf);

/// The sign table, cross-checked against |det M| = 1. Throws INTERNAL_MISMATCH
/// if the two ever disagree.
bool two_bridge_fiber(const ContinuedFraction& cf);

// ---- enumeration ----

/// Every label sequence of each even length in [2, max_length].
std::vector<std::vector<EdgeLabel>> enumerate_cycles(int max_length);

/// Every spec with 3..max_strands strands and 0..max_vertices vertices per strand.
std::vector<ThetaSpec> enumerate_theta(int max_strands, int max_vertices);

/// Calls f on every valid fraction with 1..max_length coefficients, |a_i| <= max_abs.
/// Returns the number of fractions visited.
std::int64_t for_each_cf(int max_length, int max_abs, const std::function<void(const ContinuedFraction&)>& f);

}  // namespace statefiber
