#pragma once

#include <string>
#include <string_view>

#include "statefiber/graph.hpp"

namespace statefiber {

/// Line-oriented graph text format:
///
///     vertex <id> : <half-edge-id> ...     # counterclockwise rotation
///     edge <id> <A|B> : <half-edge-id> <half-edge-id>
///     outer : <half-edge-id>               # optional
///     sign <vertex-id> : <+|->             # optional, all vertices or none
///
/// Ids are arbitrary non-negative integers. Vertices and edges are numbered in
/// order of appearance; the half-edges of the k-th edge line become 2k and 2k+1.
/// `#` starts a comment.
PlanarStateGraph parse_graph(std::string_view text);
std::string serialize_graph(const PlanarStateGraph& g);

PlanarStateGraph read_graph_file(const std::string& path);

}  // namespace statefiber
