#include "statefiber/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

namespace statefiber {

namespace {

// Slot 4c+i is position i of crossing c.
constexpr int crossing_of(int slot) { return slot >> 2; }
constexpr int position_of(int slot) { return slot & 3; }
constexpr int through(int slot) { return (slot & ~3) | ((slot + 2) & 3); }

int smoothing_partner(int slot, EdgeLabel l) {
  const int i = position_of(slot);
  const int j = l == EdgeLabel::A ? (i ^ 1) : 3 - i;
  return (slot & ~3) | j;
}

struct ArcIndex {
  std::vector<int> arc_at;              // per slot
  std::map<int, std::array<int, 2>> occ;  // arc id -> its two slots, ascending

  explicit ArcIndex(const PDCode& pd) {
    arc_at.resize(4 * pd.crossings.size());
    std::map<int, std::vector<int>> seen;
    for (int c = 0; c < pd.crossing_count(); ++c)
      for (int i = 0; i < 4; ++i) {
        arc_at[4 * c + i] = pd.crossings[c][i];
        seen[pd.crossings[c][i]].push_back(4 * c + i);
      }
    for (auto& [arc, slots] : seen) {
      if (slots.size() != 2)
        throw Error(ErrorCode::ArcCount,
                    "arc " + std::to_string(arc) + " appears " + std::to_string(slots.size()) + " times");
      occ[arc] = {slots[0], slots[1]};
    }
  }

  int other(int slot) const {
    const auto& o = occ.at(arc_at[slot]);
    return o[0] == slot ? o[1] : o[0];
  }
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

void skip_space(std::string_view s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r' || s[i] == ','))
    ++i;
}

}  // namespace

PDCode parse_pd(std::string_view text) {
  PDCode pd;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::Syntax, why + " at offset " + std::to_string(i));
  };
  skip_space(text, i);
  while (i < text.size()) {
    if (text[i] != 'X' || i + 1 >= text.size() || text[i + 1] != '[') throw fail("expected X[");
    i += 2;
    std::array<int, 4> x{};
    for (int k = 0; k < 4; ++k) {
      while (i < text.size() && text[i] == ' ') ++i;
      int v = 0;
      const auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc() || v <= 0) throw fail("expected positive arc id");
      i = static_cast<std::size_t>(p - text.data());
      while (i < text.size() && text[i] == ' ') ++i;
      const char want = k == 3 ? ']' : ',';
      if (i >= text.size() || text[i] != want) throw fail(std::string("expected '") + want + "'");
      ++i;
      x[k] = v;
    }
    pd.crossings.push_back(x);
    skip_space(text, i);
  }
  if (pd.crossings.empty()) throw Error(ErrorCode::Syntax, "no crossings");
  ArcIndex check(pd);  // throws ARC_COUNT
  return pd;
}

std::string format_pd(const PDCode& pd) {
  std::string out;
  for (const auto& x : pd.crossings) {
    if (!out.empty()) out += ' ';
    out += "X[" + std::to_string(x[0]) + ',' + std::to_string(x[1]) + ',' + std::to_string(x[2]) +
           ',' + std::to_string(x[3]) + ']';
  }
  return out;
}

KauffmanState parse_state(std::string_view text) {
  KauffmanState s;
  for (char c : text) {
    if (c == 'A' || c == 'a') s.push_back(EdgeLabel::A);
    else if (c == 'B' || c == 'b') s.push_back(EdgeLabel::B);
    else throw Error(ErrorCode::Syntax, std::string("state character '") + c + "'");
  }
  return s;
}

std::string format_state(const KauffmanState& state) {
  std::string s;
  for (auto l : state) s += to_char(l);
  return s;
}

void validate_pd(const PDCode& pd) {
  const ArcIndex idx(pd);
  const int n = pd.crossing_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [arc, o] : idx.occ)
    parent[find_root(parent, crossing_of(o[0]))] = find_root(parent, crossing_of(o[1]));
  for (int c = 1; c < n; ++c)
    if (find_root(parent, c) != find_root(parent, 0))
      throw Error(ErrorCode::Disconnected, "diagram is split");

  // Faces of the 4-valent diagram map: V = n, E = 2n, so a sphere needs n + 2.
  std::vector<char> seen(4 * n, 0);
  int f = 0;
  for (int d0 = 0; d0 < 4 * n; ++d0) {
    if (seen[d0]) continue;
    ++f;
    for (int d = d0; !seen[d];) {
      seen[d] = 1;
      const int o = idx.other(d);
      d = (o & ~3) | ((o + 1) & 3);
    }
  }
  if (f != n + 2)
    throw Error(ErrorCode::NonSpherical,
                "diagram map has " + std::to_string(f) + " faces, expected " + std::to_string(n + 2));
}

namespace {

struct ComponentWalk {
  std::vector<std::vector<int>> arcs;  // per component, in default direction
  std::vector<int> component_of_slot;
  std::vector<char> incoming;  // per slot, default direction
};

ComponentWalk walk_components(const PDCode& pd) {
  const ArcIndex idx(pd);
  const int slots = 4 * pd.crossing_count();
  ComponentWalk w;
  w.component_of_slot.assign(slots, -1);
  w.incoming.assign(slots, 0);
  for (const auto& [arc, o] : idx.occ) {
    if (w.component_of_slot[o[0]] != -1) continue;
    const int comp = static_cast<int>(w.arcs.size());
    auto& seq = w.arcs.emplace_back();
    // Trial direction: leave through the first occurrence of the minimal arc.
    std::vector<int> in_slots, out_slots;
    int out = o[0];
    do {
      const int in = idx.other(out);
      seq.push_back(idx.arc_at[out]);
      out_slots.push_back(out);
      in_slots.push_back(in);
      w.component_of_slot[out] = w.component_of_slot[in] = comp;
      out = through(in);
    } while (out != o[0]);

    int agree = 0, disagree = 0;
    for (int s : in_slots) agree += position_of(s) == 0;
    for (int s : out_slots) disagree += position_of(s) == 0;
    if (agree && disagree)
      throw Error(ErrorCode::InconsistentOrientation,
                  "under strands of component " + std::to_string(comp) + " disagree");
    if (disagree) {
      std::swap(in_slots, out_slots);
      std::reverse(seq.begin(), seq.end());
      std::rotate(seq.begin(), std::min_element(seq.begin(), seq.end()), seq.end());
    }
    for (int s : in_slots) w.incoming[s] = 1;
  }
  return w;
}

}  // namespace

std::vector<std::vector<int>> link_components(const PDCode& pd) { return walk_components(pd).arcs; }

KauffmanState seifert_state(const PDCode& pd, const std::vector<bool>& flip) {
  const auto w = walk_components(pd);
  if (!flip.empty() && flip.size() != w.arcs.size())
    throw Error(ErrorCode::InvalidArgument, "orientation has " + std::to_string(flip.size()) +
                                                " entries for " + std::to_string(w.arcs.size()) +
                                                " components");
  auto flipped = [&](int slot) { return !flip.empty() && flip[w.component_of_slot[slot]]; };
  KauffmanState state;
  for (int c = 0; c < pd.crossing_count(); ++c) {
    const int a = 4 * c, b = 4 * c + 1;
    const bool under_reversed = flipped(a);
    const bool b_incoming = w.incoming[b] != flipped(b);  // over strand runs b -> d
    // Both incoming ends must join outgoing ends: a-d / b-c is the B smoothing.
    state.push_back(b_incoming != under_reversed ? EdgeLabel::B : EdgeLabel::A);
  }
  return state;
}

StateCircles trace_circles(const PDCode& pd, const KauffmanState& state) {
  if (static_cast<int>(state.size()) != pd.crossing_count())
    throw Error(ErrorCode::StateLength, "state has " + std::to_string(state.size()) + " entries for " +
                                            std::to_string(pd.crossing_count()) + " crossings");
  validate_pd(pd);
  const ArcIndex idx(pd);
  const int slots = 4 * pd.crossing_count();
  std::vector<char> used(slots, 0);
  StateCircles raw;
  std::vector<std::array<int, 2>> end_circle(pd.crossing_count(), {-1, -1});

  for (int s0 = 0; s0 < slots; ++s0) {
    if (used[s0]) continue;
    const int circle = static_cast<int>(raw.circles.size());
    auto& arcs = raw.circles.emplace_back();
    auto& ends = raw.attachments.emplace_back();
    int s = s0;
    do {
      const int c = crossing_of(s);
      const int t = smoothing_partner(s, state[c]);
      used[s] = used[t] = 1;
      const bool left = position_of(t) == ((position_of(s) + 1) & 3);
      const int end = (position_of(s) == 0 || position_of(t) == 0) ? 0 : 1;
      ends.push_back({c, end, left});
      end_circle[c][end] = circle;
      arcs.push_back(idx.arc_at[t]);
      s = idx.other(t);
    } while (s != s0);
  }

  // Renumber circles by minimal arc id.
  const int k = static_cast<int>(raw.circles.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> key(k);
  for (int i = 0; i < k; ++i) key[i] = *std::min_element(raw.circles[i].begin(), raw.circles[i].end());
  std::sort(order.begin(), order.end(), [&](int x, int y) { return key[x] < key[y]; });
  std::vector<int> rank_of(k);
  for (int i = 0; i < k; ++i) rank_of[order[i]] = i;

  StateCircles out;
  for (int i : order) {
    out.circles.push_back(raw.circles[i]);
    out.attachments.push_back(raw.attachments[i]);
  }
  out.band_circles.resize(pd.crossing_count());
  for (int c = 0; c < pd.crossing_count(); ++c)
    out.band_circles[c] = {rank_of[end_circle[c][0]], rank_of[end_circle[c][1]]};
  return out;
}

PlanarStateGraph resolve(const PDCode& pd, const KauffmanState& state) {
  const StateCircles sc = trace_circles(pd, state);
  const int k = static_cast<int>(sc.circles.size());
  std::vector<std::vector<HalfEdge>> rotation(k);
  // Collapsing a circle to a point keeps the right-hand bands in order and
  // reverses the left-hand ones.
  for (int v = 0; v < k; ++v) {
    const auto& ends = sc.attachments[v];
    auto& rot = rotation[v];
    for (const auto& e : ends)
      if (!e.left) rot.push_back(2 * e.crossing + e.end);
    for (auto it = ends.rbegin(); it != ends.rend(); ++it)
      if (it->left) rot.push_back(2 * it->crossing + it->end);
  }
  KauffmanState labels = state;
  PlanarStateGraph g(std::move(rotation), std::move(labels));
  const auto report = validate(g);
  if (!report.ok) throw Error(ErrorCode::InternalMismatch, "resolved graph invalid: " + report.message);
  return g;
}

}  // namespace statefiber
