#include <charconv>
#include <cstdlib>

#include "statefiber/families.hpp"
#include "statefiber/stallings.hpp"

namespace statefiber {

namespace {

EdgeLabel label_of(int a) { return a > 0 ? EdgeLabel::A : EdgeLabel::B; }

bool allowed(int L, int i, int a) {
  const int b = std::abs(a);
  if (b == 0) return false;
  if ((i == 1 || i == L) && b < 2) return false;
  if (i % 2 == 0) return i == L ? b % 2 == 1 : b % 2 == 0;
  return true;
}

}  // namespace

void validate_cf(const ContinuedFraction& cf) {
  const int L = cf.length();
  if (L < 1) throw Error(ErrorCode::InvalidContinuedFraction, "no coefficients");
  for (int i = 1; i <= L; ++i) {
    if (allowed(L, i, cf.a(i))) continue;
    const int b = std::abs(cf.a(i));
    std::string why = b == 0                      ? "is zero"
                      : (i == 1 || i == L) && b < 2 ? "is an end coefficient of absolute value 1"
                      : i == L                      ? "must be odd as a final even-index coefficient"
                                                    : "must be even at an even index";
    throw Error(ErrorCode::InvalidContinuedFraction, "a_" + std::to_string(i) + " = " + std::to_string(cf.a(i)) + " " + why);
  }
}

ContinuedFraction parse_cf(std::string_view text) {
  ContinuedFraction cf;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == ',' || *p == '[' || *p == ']')) ++p;
    if (p == end) break;
    if (*p == '+') ++p;
    int v = 0;
    const auto [q, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) throw Error(ErrorCode::Syntax, "bad coefficient list '" + std::string(text) + "'");
    cf.coefficients.push_back(v);
    p = q;
  }
  return cf;
}

std::string format_cf(const ContinuedFraction& cf) {
  std::string out;
  for (int a : cf.coefficients) {
    if (!out.empty()) out += ',';
    out += std::to_string(a);
  }
  return out;
}

PlanarStateGraph two_bridge_graph(const ContinuedFraction& cf) {
  validate_cf(cf);
  const int L = cf.length();
  const int groups = (L + 1) / 2;
  const bool closing = L % 2 == 0;

  std::vector<std::vector<HalfEdge>> rot(1 + groups);
  std::vector<EdgeLabel> labels;
  auto new_edge = [&](EdgeLabel l) {
    labels.push_back(l);
    return static_cast<EdgeId>(labels.size() - 1);
  };

  // Parallel groups; listed bottom to top at x, so reversed at y_j.
  std::vector<std::vector<EdgeId>> group(groups + 1);
  for (int j = 1; j <= groups; ++j) {
    const int a = cf.a(2 * j - 1);
    for (int t = 0; t < std::abs(a); ++t) group[j].push_back(new_edge(label_of(a)));
  }

  // A path of `len` edges; returns its first and last half-edges.
  auto path = [&](int len, EdgeLabel l) {
    HalfEdge first = -1, last = -1;
    for (int t = 0; t < len; ++t) {
      const EdgeId e = new_edge(l);
      if (t == 0) {
        first = 2 * e;
      } else {
        rot.back().push_back(2 * e);
      }
      if (t + 1 == len) {
        last = 2 * e + 1;
      } else {
        rot.push_back({2 * e + 1});
      }
    }
    return std::pair{first, last};
  };

  std::vector<std::pair<HalfEdge, HalfEdge>> strand(groups + 1, {-1, -1});
  for (int j = 1; 2 * j < L; ++j) strand[j] = path(std::abs(cf.a(2 * j)), label_of(cf.a(2 * j)));
  std::pair<HalfEdge, HalfEdge> close{-1, -1};
  if (closing) close = path(std::abs(cf.a(L)), label_of(cf.a(L)));

  auto& x = rot[0];
  if (closing) x.push_back(close.first);
  for (int j = groups; j >= 1; --j)
    for (EdgeId e : group[j]) x.push_back(2 * e);

  for (int j = 1; j <= groups; ++j) {
    auto& y = rot[j];
    if (j > 1) y.push_back(strand[j - 1].second);
    for (auto it = group[j].rbegin(); it != group[j].rend(); ++it) y.push_back(2 * *it + 1);
    if (strand[j].first >= 0) y.push_back(strand[j].first);
    if (closing && j == groups) y.push_back(close.second);
  }

  const HalfEdge outer = 2 * group[1].back() + 1;
  return assign_signs(PlanarStateGraph(std::move(rot), std::move(labels), outer), 0);
}

std::vector<std::vector<std::int64_t>> TridiagonalMatrix::dense() const {
  const int m = size();
  std::vector<std::vector<std::int64_t>> d(m, std::vector<std::int64_t>(m, 0));
  for (int i = 0; i < m; ++i) {
    d[i][i] = p[i];
    if (i + 1 < m) {
      d[i][i + 1] = q[i];
      d[i + 1][i] = r[i];
    }
  }
  return d;
}

TwoBridgeMatrix two_bridge_matrix(const ContinuedFraction& cf) {
  validate_cf(cf);
  const int L = cf.length();
  const int m = L / 2;  // regions R_1..R_m

  // e_j for j = 1..m+1 and strand epsilon_j (label, length) for j = 1..m. With
  // a closing strand, its first edge serves as e_{m+1} and the rest as epsilon_m.
  auto e_is_a = [&](int j) { return cf.a(std::min(2 * j - 1, L)) > 0; };
  auto strand_len = [&](int j) { return 2 * j == L ? std::abs(cf.a(L)) - 1 : std::abs(cf.a(2 * j)); };

  TwoBridgeMatrix out;
  auto u = [&](int j, int exp) {
    FreeWord w;
    if (j >= 1 && j <= m)
      for (int t = 0; t < std::abs(exp); ++t) w.push_back({j, exp > 0 ? 1 : -1});
    return w;
  };
  for (int j = 1; j <= m; ++j) {
    const FreeWord w1 = e_is_a(j + 1) ? u(j, 1) : u(j + 1, 1);
    const FreeWord w2 = u(j, (cf.a(2 * j) > 0 ? 1 : -1) * strand_len(j) / 2);
    const FreeWord w3 = e_is_a(j) ? u(j - 1, -1) : u(j, -1);
    out.words.push_back(reduce(concat(concat(w1, w2), w3)));
  }

  auto& M = out.matrix;
  if (m == 0) return out;
  const auto ab = abelianize(out.words, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      if (std::abs(i - k) > 1 && ab.matrix[i][k] != 0)
        throw Error(ErrorCode::InternalMismatch, "2-bridge matrix is not tridiagonal");
  for (int i = 0; i < m; ++i) {
    M.p.push_back(ab.matrix[i][i]);
    if (i + 1 < m) {
      M.q.push_back(ab.matrix[i][i + 1]);
      M.r.push_back(ab.matrix[i + 1][i]);
      if (std::abs(M.q.back()) + std::abs(M.r.back()) != 1)
        throw Error(ErrorCode::InternalMismatch, "neighbouring regions must share exactly one letter");
    }
  }
  for (auto v : M.p) out.det *= v;
  return out;
}

bool two_bridge_table(const ContinuedFraction& cf) {
  validate_cf(cf);
  const int L = cf.length();
  for (int j = 1; 2 * j < L; ++j) {
    const bool before = cf.a(2 * j - 1) > 0, after = cf.a(2 * j + 1) > 0;
    const int a = cf.a(2 * j);
    const bool ok = before && after   ? a == -4
                    : !before && !after ? a == 4
                                        : std::abs(a) == 2;
    if (!ok) return false;
  }
  if (L % 2 == 0) {
    const int a = cf.a(L);
    return cf.a(L - 1) > 0 ? a == -3 : a == 3;
  }
  return true;
}

bool two_bridge_fiber(const ContinuedFraction& cf) {
  const bool table = two_bridge_table(cf);
  const bool unimodular = std::abs(two_bridge_matrix(cf).det) == 1;
  if (table != unimodular)
    throw Error(ErrorCode::InternalMismatch, "sign table and determinant disagree on [" + format_cf(cf) + "]");
  return table;
}

std::int64_t for_each_cf(int max_length, int max_abs, const std::function<void(const ContinuedFraction&)>& f) {
  std::int64_t count = 0;
  for (int L = 1; L <= max_length; ++L) {
    std::vector<std::vector<int>> values(L + 1);
    bool empty = false;
    for (int i = 1; i <= L; ++i) {
      for (int a = -max_abs; a <= max_abs; ++a)
        if (allowed(L, i, a)) values[i].push_back(a);
      empty |= values[i].empty();
    }
    if (empty) continue;
    std::vector<std::size_t> idx(L + 1, 0);
    ContinuedFraction cf;
    cf.coefficients.resize(L);
    while (true) {
      for (int i = 1; i <= L; ++i) cf.coefficients[L - i] = values[i][idx[i]];
      f(cf);
      ++count;
      int i = 1;
      while (i <= L && ++idx[i] == values[i].size()) idx[i++] = 0;
      if (i > L) break;
    }
  }
  return count;
}

}  // namespace statefiber
