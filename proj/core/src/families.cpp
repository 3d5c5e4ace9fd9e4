#include "statefiber/families.hpp"

#include <algorithm>
#include <cstdlib>

namespace statefiber {

bool cycle_fiber(std::span<const EdgeLabel> labels) {
  const int n = static_cast<int>(labels.size());
  if (n % 2) throw Error(ErrorCode::OddCycle, "cycle of odd length " + std::to_string(n));
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty cycle");
  const auto a = std::count(labels.begin(), labels.end(), EdgeLabel::A);
  return std::abs(2 * a - n) == 2;
}

PlanarStateGraph cycle_graph(std::span<const EdgeLabel> labels) {
  const int n = static_cast<int>(labels.size());
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "empty cycle");
  std::vector<std::vector<HalfEdge>> rot(n);
  for (int i = 0; i < n; ++i) {
    rot[i].push_back(2 * i);
    rot[(i + 1) % n].push_back(2 * i + 1);
  }
  PlanarStateGraph g(std::move(rot), {labels.begin(), labels.end()});
  return n % 2 ? g : assign_signs(g, 0);
}

// ---- theta ----

void validate_theta(const ThetaSpec& spec) {
  if (spec.strands.size() < 3)
    throw Error(ErrorCode::TooFewStrands, "a theta graph needs at least 3 strands");
  for (const Strand& s : spec.strands)
    if (s.vertices < 0) throw Error(ErrorCode::InvalidArgument, "negative strand vertex count");
  const int parity = spec.strands[0].vertices % 2;
  for (const Strand& s : spec.strands)
    if (s.vertices % 2 != parity)
      throw Error(ErrorCode::Parity, "strand vertex counts must be all even or all odd");
}

ThetaSpec parse_theta(std::string_view text) {
  ThetaSpec spec;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view tok = text.substr(start, comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw Error(ErrorCode::Syntax, "empty strand in '" + std::string(text) + "'");
    const EdgeLabel l = parse_label(tok[0]);
    for (char c : tok)
      if (parse_label(c) != l)
        throw Error(ErrorCode::Unreduced, "strand '" + std::string(tok) + "' mixes labels");
    spec.strands.push_back({static_cast<int>(tok.size()) - 1, l});
    start = comma + 1;
  }
  return spec;
}

std::string format_theta(const ThetaSpec& spec) {
  std::string out;
  for (const Strand& s : spec.strands) {
    if (!out.empty()) out += ',';
    out.append(static_cast<std::size_t>(s.vertices) + 1, to_char(s.label));
  }
  return out;
}

PlanarStateGraph theta_graph(const ThetaSpec& spec) {
  validate_theta(spec);
  std::vector<std::vector<HalfEdge>> rot(2);
  std::vector<EdgeLabel> labels;
  std::vector<HalfEdge> arrivals;
  for (const Strand& s : spec.strands) {
    VertexId prev = 0;
    for (int i = 0; i <= s.vertices; ++i) {
      const EdgeId e = static_cast<EdgeId>(labels.size());
      labels.push_back(s.label);
      rot[prev].push_back(2 * e);
      if (i == s.vertices) {
        arrivals.push_back(2 * e + 1);
      } else {
        prev = static_cast<VertexId>(rot.size());
        rot.push_back({2 * e + 1});
      }
    }
  }
  rot[1].assign(arrivals.rbegin(), arrivals.rend());
  return assign_signs(PlanarStateGraph(std::move(rot), std::move(labels), HalfEdge{0}), 0);
}

std::vector<int> theta_to_pretzel(const ThetaSpec& spec) {
  std::vector<int> p;
  for (const Strand& s : spec.strands) p.push_back((s.label == EdgeLabel::A ? 1 : -1) * (s.vertices + 1));
  return p;
}

namespace {

// (2, -2, ..., 2, -2, l) with n odd, or (2, -2, ..., -2, 2, -4) with n even,
// up to a global sign.
bool alternating_form(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  for (int sign : {1, -1}) {
    bool prefix = true;
    for (int i = 0; i + 1 < n && prefix; ++i) prefix = p[i] == sign * (i % 2 ? -2 : 2);
    if (!prefix) continue;
    if (n % 2 == 1) return true;
    if (p[n - 1] == sign * -4) return true;
  }
  return false;
}

}  // namespace

bool pretzel_fiber(std::span<const int> p) {
  if (std::find(p.begin(), p.end(), 0) != p.end())
    throw Error(ErrorCode::InvalidArgument, "pretzel coefficients must be nonzero");
  if (p.empty()) return false;
  for (int sign : {1, -1}) {
    const bool all = std::all_of(p.begin(), p.end(), [&](int x) { return x == sign || x == -3 * sign; });
    if (all && std::find(p.begin(), p.end(), sign) != p.end()) return true;
  }
  std::vector<int> t(p.begin(), p.end());
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (alternating_form(t)) return true;
      std::rotate(t.begin(), t.begin() + 1, t.end());
    }
    std::reverse(t.begin(), t.end());
  }
  return false;
}

bool theta_fiber(const ThetaSpec& spec) {
  validate_theta(spec);
  const auto& s = spec.strands;
  const int n = static_cast<int>(s.size());

  // Strands of 0 and 2 vertices, some of 0, the two kinds oppositely labelled.
  bool short_long = std::any_of(s.begin(), s.end(), [](const Strand& x) { return x.vertices == 0; });
  for (const Strand& x : s) {
    if (!short_long) break;
    if (x.vertices != 0 && x.vertices != 2) short_long = false;
    for (const Strand& y : s)
      if ((x.vertices == y.vertices) != (x.label == y.label)) short_long = false;
  }
  if (short_long) return true;

  // One final strand; the others have one vertex each and alternate in cyclic
  // order starting after it. An even number of them leaves the final strand
  // free; an odd number needs it to continue the alternation with 3 vertices.
  for (int f = 0; f < n; ++f) {
    bool ok = true;
    for (int i = 1; i < n && ok; ++i) {
      const Strand& x = s[(f + i) % n];
      ok = x.vertices == 1 && (i == 1 || x.label != s[(f + i - 1) % n].label);
    }
    if (!ok) continue;
    if ((n - 1) % 2 == 0) return true;
    const Strand& last = s[f];
    if (last.vertices == 3 && last.label != s[(f + n - 1) % n].label && last.label != s[(f + 1) % n].label)
      return true;
  }
  return false;
}

// ---- enumeration ----

std::vector<std::vector<EdgeLabel>> enumerate_cycles(int max_length) {
  std::vector<std::vector<EdgeLabel>> out;
  for (int n = 2; n <= max_length; n += 2)
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<EdgeLabel> l(n);
      for (int i = 0; i < n; ++i) l[i] = (mask >> i) & 1 ? EdgeLabel::B : EdgeLabel::A;
      out.push_back(std::move(l));
    }
  return out;
}

std::vector<ThetaSpec> enumerate_theta(int max_strands, int max_vertices) {
  std::vector<ThetaSpec> out;
  for (int n = 3; n <= max_strands; ++n)
    for (int parity = 0; parity < 2; ++parity) {
      std::vector<int> counts;
      for (int v = parity; v <= max_vertices; v += 2) counts.push_back(v);
      const int choices = 2 * static_cast<int>(counts.size());
      if (choices == 0) continue;
      std::vector<int> idx(n, 0);
      while (true) {
        ThetaSpec spec;
        for (int i : idx) spec.strands.push_back({counts[i / 2], i % 2 ? EdgeLabel::B : EdgeLabel::A});
        out.push_back(std::move(spec));
        int k = 0;
        while (k < n && ++idx[k] == choices) idx[k++] = 0;
        if (k == n) break;
      }
    }
  return out;
}

}  // namespace statefiber
