#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "statefiber/graph.hpp"

namespace statefiber {

/// Planar diagram code. Each crossing X[a,b,c,d] lists its four arcs
/// counterclockwise, starting from the incoming under-strand; every arc id
/// occurs exactly twice.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;

  int crossing_count() const noexcept { return static_cast<int>(crossings.size()); }
  friend bool operator==(const PDCode&, const PDCode&) = default;
};

/// One resolution per crossing, indexed like PDCode::crossings.
using KauffmanState = std::vector<EdgeLabel>;

/// Parses whitespace-separated `X[a,b,c,d]` tokens. Throws SYNTAX or ARC_COUNT.
PDCode parse_pd(std::string_view text);
std::string format_pd(const PDCode& pd);

/// Parses a string such as "AAB". Throws SYNTAX on other characters.
KauffmanState parse_state(std::string_view text);
std::string format_state(const KauffmanState& state);

/// Checks connectivity (DISCONNECTED) and that the 4-valent diagram map is
/// spherical (NON_SPHERICAL).
void validate_pd(const PDCode& pd);

/// Link components as cyclic arc sequences, ordered by their minimal arc id.
std::vector<std::vector<int>> link_components(const PDCode& pd);

/// Orientation-respecting resolution. `flip[i]` reverses component i (in
/// link_components order) relative to its default direction; an empty vector
/// keeps every default. Throws INCONSISTENT_ORIENTATION when the code's under
/// strands cannot all be incoming along one direction of their component.
KauffmanState seifert_state(const PDCode& pd, const std::vector<bool>& flip = {});

struct BandEnd {
  int crossing = 0;
  int end = 0;        // 0 for the smoothing pair holding position a, else 1
  bool left = false;  // band lies left of the circle's traversal direction
};

struct StateCircles {
  std::vector<std::vector<int>> circles;           // arcs in traversal order
  std::vector<std::vector<BandEnd>> attachments;   // band ends in traversal order
  std::vector<std::array<int, 2>> band_circles;    // per crossing: circle at each band end
};

StateCircles trace_circles(const PDCode& pd, const KauffmanState& state);

/// State graph: one vertex per circle (numbered by minimal arc id), one edge per
/// crossing (edge i is crossing i), rotation from band order along the circles.
PlanarStateGraph resolve(const PDCode& pd, const KauffmanState& state);

}  // namespace statefiber
