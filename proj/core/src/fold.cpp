#include "statefiber/fold.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>

#include "statefiber/error.hpp"

namespace statefiber {

namespace {

// Key of an arc end: generator and whether the arc leaves (0) or enters (1).
constexpr int out_key(int gen) { return 2 * gen; }
constexpr int in_key(int gen) { return 2 * gen + 1; }

int find_vertex(std::vector<int>& parent, int v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

// Dense renumbering: basepoint class first, then classes by smallest member.
DirectedLabeledGraph compact(int n, int basepoint, std::vector<int>& parent, const std::vector<Arc>& arcs,
                             const std::vector<char>& alive) {
  std::vector<int> id(n, -1);
  int next = 0;
  id[find_vertex(parent, basepoint)] = next++;
  for (int v = 0; v < n; ++v) {
    const int r = find_vertex(parent, v);
    if (id[r] < 0) id[r] = next++;
  }
  DirectedLabeledGraph out;
  out.vertices = next;
  out.basepoint = 0;
  for (std::size_t a = 0; a < arcs.size(); ++a)
    if (alive[a])
      out.arcs.push_back({id[find_vertex(parent, arcs[a].src)], id[find_vertex(parent, arcs[a].dst)], arcs[a].gen});
  return out;
}

class Folder {
 public:
  Folder(const DirectedLabeledGraph& g, bool record) : g_(g), record_(record) {
    const int n = g.vertices;
    parent_.resize(n);
    for (int v = 0; v < n; ++v) parent_[v] = v;
    size_.assign(n, 1);
    table_.resize(n);
    const int m = static_cast<int>(g.arcs.size());
    fwd_.resize(m);
    for (int a = 0; a < m; ++a) fwd_[a] = a;
    for (int a = 0; a < m; ++a) {
      const Arc& arc = g.arcs[a];
      if (arc.src < 0 || arc.src >= n || arc.dst < 0 || arc.dst >= n || arc.gen < 1)
        throw Error(ErrorCode::InvalidArgument, "arc " + std::to_string(a) + " out of range");
      insert(arc.src, out_key(arc.gen), a);
      insert(arc.dst, in_key(arc.gen), a);
    }
  }

  FoldResult run() {
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const auto [x0, y0, key] = queue_[head];
      const int x = resolve(x0), y = resolve(y0);
      if (x == y) continue;
      const Arc& ax = g_.arcs[x];
      const Arc& ay = g_.arcs[y];
      const bool outgoing = (key & 1) == 0;
      const int shared = find_vertex(parent_, outgoing ? ax.src : ax.dst);
      fwd_[y] = x;
      if (record_) trace_.push_back({shared, x, y});
      unite(outgoing ? ax.dst : ax.src, outgoing ? ay.dst : ay.src);
    }
    std::vector<char> alive(g_.arcs.size());
    for (std::size_t a = 0; a < alive.size(); ++a) alive[a] = fwd_[a] == static_cast<int>(a);
    FoldResult r;
    r.graph = compact(g_.vertices, g_.basepoint, parent_, g_.arcs, alive);
    r.trace = std::move(trace_);
    return r;
  }

 private:
  struct Pending {
    int x, y, key;
  };

  int resolve(int a) {
    while (fwd_[a] != a) a = fwd_[a] = fwd_[fwd_[a]];
    return a;
  }

  // Arc ends at a vertex keyed by (generator, direction). Most vertices never
  // hold more than two, so those live inline and only merged vertices spill.
  struct Table {
    std::pair<int, int> inline_[2];
    int inline_count = 0;
    std::unique_ptr<std::vector<std::pair<int, int>>> spill;

    template <class F>
    bool any_of(F&& f) const {
      for (int i = 0; i < inline_count; ++i)
        if (f(inline_[i])) return true;
      if (spill)
        for (const auto& e : *spill)
          if (f(e)) return true;
      return false;
    }
    void push(int key, int arc) {
      if (inline_count < 2)
        inline_[inline_count++] = {key, arc};
      else {
        if (!spill) spill = std::make_unique<std::vector<std::pair<int, int>>>();
        spill->emplace_back(key, arc);
      }
    }
    std::size_t size() const { return inline_count + (spill ? spill->size() : 0); }
  };

  void insert(int v, int key, int arc) {
    const bool found = table_[v].any_of([&](const std::pair<int, int>& e) {
      if (e.first != key) return false;
      if (resolve(e.second) != resolve(arc)) queue_.push_back({e.second, arc, key});
      return true;
    });
    if (!found) table_[v].push(key, arc);
  }

  void unite(int a, int b) {
    a = find_vertex(parent_, a);
    b = find_vertex(parent_, b);
    if (a == b) return;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && table_[a].size() < table_[b].size())) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    Table moved = std::move(table_[b]);
    table_[b] = Table{};
    moved.any_of([&](const std::pair<int, int>& e) {
      insert(a, e.first, e.second);
      return false;
    });
  }

  const DirectedLabeledGraph& g_;
  bool record_;
  std::vector<int> parent_, size_, fwd_;
  std::vector<Table> table_;
  std::vector<Pending> queue_;
  std::vector<FoldStep> trace_;
};

}  // namespace

FoldResult fold(const DirectedLabeledGraph& g, bool record_trace) { return Folder(g, record_trace).run(); }

bool is_folded(const DirectedLabeledGraph& g) {
  std::vector<std::vector<int>> keys(g.vertices);
  for (const Arc& a : g.arcs) {
    keys[a.src].push_back(out_key(a.gen));
    keys[a.dst].push_back(in_key(a.gen));
  }
  for (auto& k : keys) {
    std::sort(k.begin(), k.end());
    if (std::adjacent_find(k.begin(), k.end()) != k.end()) return false;
  }
  return true;
}

bool is_full_rose(const DirectedLabeledGraph& folded, int n) {
  if (folded.vertices != 1 || static_cast<int>(folded.arcs.size()) != n) return false;
  return std::all_of(folded.arcs.begin(), folded.arcs.end(), [](const Arc& a) { return a.src == a.dst; });
}

void replay_folds(const DirectedLabeledGraph& g, const std::vector<FoldStep>& trace,
                  const DirectedLabeledGraph& expected) {
  const int m = static_cast<int>(g.arcs.size());
  std::vector<int> parent(g.vertices);
  for (int v = 0; v < g.vertices; ++v) parent[v] = v;
  std::vector<char> alive(m, 1);
  auto fail = [](std::size_t i, const std::string& why) {
    throw Error(ErrorCode::InternalMismatch, "fold step " + std::to_string(i) + ": " + why);
  };
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const FoldStep& s = trace[i];
    if (s.kept < 0 || s.kept >= m || s.removed < 0 || s.removed >= m || s.kept == s.removed)
      fail(i, "arc index out of range");
    if (s.vertex < 0 || s.vertex >= g.vertices) fail(i, "vertex out of range");
    if (!alive[s.kept] || !alive[s.removed]) fail(i, "arc already folded away");
    const Arc& k = g.arcs[s.kept];
    const Arc& r = g.arcs[s.removed];
    if (k.gen != r.gen) fail(i, "labels differ");
    const int v = find_vertex(parent, s.vertex);
    int a, b;
    if (find_vertex(parent, k.src) == v && find_vertex(parent, r.src) == v) {
      a = k.dst, b = r.dst;
    } else if (find_vertex(parent, k.dst) == v && find_vertex(parent, r.dst) == v) {
      a = k.src, b = r.src;
    } else {
      fail(i, "arcs do not share the vertex in the same direction");
    }
    alive[s.removed] = 0;
    parent[find_vertex(parent, a)] = find_vertex(parent, b);
  }
  const auto got = compact(g.vertices, g.basepoint, parent, g.arcs, alive);
  if (!is_folded(got)) throw Error(ErrorCode::InternalMismatch, "replayed graph is not folded");
  if (!(got == expected)) throw Error(ErrorCode::InternalMismatch, "replayed graph differs from the reported one");
}

bool spells_loop(const DirectedLabeledGraph& folded, const FreeWord& w) {
  std::map<std::pair<int, int>, int> step;  // (vertex, signed gen) -> next vertex
  for (const Arc& a : folded.arcs) {
    step[{a.src, a.gen}] = a.dst;
    step[{a.dst, -a.gen}] = a.src;
  }
  int v = folded.basepoint;
  for (const Letter& l : reduce(w)) {
    const auto it = step.find({v, l.gen * l.exp});
    if (it == step.end()) return false;
    v = it->second;
  }
  return v == folded.basepoint;
}

DirectedLabeledGraph build_gamma_from_words(const std::vector<FreeWord>& words, int n) {
  DirectedLabeledGraph g;
  for (const FreeWord& w : words) {
    if (max_generator(w) > n)
      throw Error(ErrorCode::InvalidArgument, "word uses a generator beyond u" + std::to_string(n));
    int cur = g.basepoint;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int next = i + 1 == w.size() ? g.basepoint : g.vertices++;
      if (w[i].exp > 0) g.arcs.push_back({cur, next, w[i].gen});
      else g.arcs.push_back({next, cur, w[i].gen});
      cur = next;
    }
  }
  return g;
}

}  // namespace statefiber
