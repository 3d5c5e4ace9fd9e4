#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "statefiber/graph.hpp"

namespace fixtures {

using namespace statefiber;

/// Embeds a straight-line drawing: rotation at each vertex is the
/// counterclockwise angle order of its incident edges. Edge i runs from
/// ends[i].first (half-edge 2i) to ends[i].second (half-edge 2i+1).
inline PlanarStateGraph from_drawing(const std::vector<std::pair<double, double>>& xy,
                                     const std::vector<std::pair<int, int>>& ends,
                                     const std::vector<EdgeLabel>& labels,
                                     std::optional<HalfEdge> outer = std::nullopt) {
  std::vector<std::vector<std::pair<double, HalfEdge>>> around(xy.size());
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    const auto [u, v] = ends[e];
    around[u].push_back({std::atan2(xy[v].second - xy[u].second, xy[v].first - xy[u].first), 2 * e});
    around[v].push_back({std::atan2(xy[u].second - xy[v].second, xy[u].first - xy[v].first), 2 * e + 1});
  }
  std::vector<std::vector<HalfEdge>> rot(xy.size());
  for (std::size_t v = 0; v < xy.size(); ++v) {
    std::sort(around[v].begin(), around[v].end());
    for (const auto& [angle, h] : around[v]) rot[v].push_back(h);
  }
  return PlanarStateGraph(std::move(rot), labels, outer);
}

/// The cube graph with its A/B labelling. Vertices x,y,z,t (outer square),
/// w,p,q,s (inner square); edge i of the list is e_{i+1}, drawn from its PLUS
/// end. Outer face is the outer square.
inline PlanarStateGraph cube() {
  enum { x, y, z, t, w, p, q, s };
  const std::vector<std::pair<double, double>> xy = {{0, 0}, {3, 0}, {3, 3}, {0, 3},
                                                      {1, 1}, {2, 1}, {2, 2}, {1, 2}};
  const std::vector<std::pair<int, int>> ends = {{x, y}, {z, y}, {z, t}, {x, t}, {x, w}, {p, y},
                                                 {z, q}, {s, t}, {p, w}, {p, q}, {s, q}, {s, w}};
  const auto A = EdgeLabel::A, B = EdgeLabel::B;
  const std::vector<EdgeLabel> labels = {B, A, A, A, B, B, A, B, B, A, A, B};
  return from_drawing(xy, ends, labels, HalfEdge{0});
}

/// Half-edges naming the cube's bounded regions R1..R5 (bottom, right, top,
/// left, inner), each traversed with its region on the right.
inline std::vector<HalfEdge> cube_region_anchors() {
  // y->x on e1, z->y on e2, t->z on e3, x->t on e4, q->p on e10.
  return {1, 2, 5, 6, 19};
}

inline PlanarStateGraph cycle(const std::vector<EdgeLabel>& labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<HalfEdge>> rot(n);
  for (int i = 0; i < n; ++i) {
    rot[i].push_back(2 * i);                      // edge i leaves vertex i
    rot[(i + 1) % n].push_back(2 * i + 1);        // and arrives at i+1
  }
  return PlanarStateGraph(std::move(rot), labels);
}

inline std::vector<EdgeLabel> labels_of(const char* s) {
  std::vector<EdgeLabel> out;
  for (; *s; ++s) out.push_back(parse_label(*s));
  return out;
}

/// Poles 0 and 1 joined by strands with per-edge labels, e.g. {"AB", "AAAA"}.
/// Strands leave pole 0 in counterclockwise order and arrive at pole 1 in
/// reverse order.
inline PlanarStateGraph theta_strands(const std::vector<std::string>& strands) {
  std::vector<std::vector<HalfEdge>> rot(2);
  std::vector<EdgeLabel> labels;
  std::vector<HalfEdge> arrivals;
  for (const auto& st : strands) {
    VertexId prev = 0;
    for (std::size_t i = 0; i < st.size(); ++i) {
      const EdgeId e = static_cast<EdgeId>(labels.size());
      labels.push_back(parse_label(st[i]));
      rot[prev].push_back(2 * e);
      if (i + 1 == st.size()) {
        arrivals.push_back(2 * e + 1);
      } else {
        rot.emplace_back();
        prev = static_cast<VertexId>(rot.size() - 1);
        rot[prev].push_back(2 * e + 1);
      }
    }
  }
  rot[1].assign(arrivals.rbegin(), arrivals.rend());
  return PlanarStateGraph(std::move(rot), std::move(labels));
}

/// Random connected plane bipartite multigraph (no loops) with `edges` edges,
/// grown by pendant edges and face-splitting chords between opposite colours.
template <class Rng>
PlanarStateGraph random_plane_bipartite(Rng& rng, int edges, double chord_bias = 0.5) {
  std::vector<std::vector<HalfEdge>> rot(1);
  std::vector<int> colour{0};
  std::vector<EdgeLabel> labels;
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto insert_before = [&](HalfEdge target, HalfEdge h, int v) {
    auto& r = rot[v];
    r.insert(std::find(r.begin(), r.end(), target), h);
  };
  while (static_cast<int>(labels.size()) < edges) {
    const EdgeId e = static_cast<EdgeId>(labels.size());
    labels.push_back(pick(2) ? EdgeLabel::B : EdgeLabel::A);
    bool placed = false;
    if (e > 0 && std::bernoulli_distribution(chord_bias)(rng)) {
      PlanarStateGraph g(rot, std::vector<EdgeLabel>(labels.begin(), labels.end() - 1));
      const auto fs = faces(g);
      const auto& cyc = fs.cycles[pick(fs.face_count())];
      std::vector<std::pair<HalfEdge, HalfEdge>> options;
      for (HalfEdge a : cyc)
        for (HalfEdge b : cyc)
          if (colour[g.origin(a)] != colour[g.origin(b)]) options.push_back({a, b});
      if (!options.empty()) {
        const auto [a, b] = options[pick(static_cast<int>(options.size()))];
        insert_before(a, 2 * e, g.origin(a));
        insert_before(b, 2 * e + 1, g.origin(b));
        placed = true;
      }
    }
    if (!placed) {
      const int v = pick(static_cast<int>(rot.size()));
      auto& r = rot[v];
      r.insert(r.begin() + pick(static_cast<int>(r.size()) + 1), 2 * e);
      rot.push_back({2 * e + 1});
      colour.push_back(1 - colour[v]);
    }
  }
  return PlanarStateGraph(std::move(rot), std::move(labels));
}

/// Uniformly random label vector of length n.
template <class Rng>
std::vector<EdgeLabel> random_labels(Rng& rng, int n) {
  std::vector<EdgeLabel> out(n);
  for (auto& l : out) l = std::bernoulli_distribution(0.5)(rng) ? EdgeLabel::B : EdgeLabel::A;
  return out;
}

}  // namespace fixtures
