#pragma once

// Independent reference implementations used only by tests.

#include <cstdint>
#include <vector>

#include "statefiber/fold.hpp"

namespace oracles {

using namespace statefiber;

/// Determinant by cofactor expansion along the first row.
inline std::int64_t cofactor_det(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    det += (c % 2 ? -1 : 1) * m[0][c] * cofactor_det(minor);
  }
  return det;
}

/// Whether the reduced word w is the free reduction of a word read along a
/// basepoint loop of an arbitrary (unfolded) graph. Benois saturation: add
/// empty moves p -> q whenever some x x^-1 leads from p to q, to closure.
class LoopLanguage {
 public:
  explicit LoopLanguage(const DirectedLabeledGraph& g) : g_(g), n_(g.vertices) {
    eps_.assign(n_, std::vector<char>(n_, 0));
    for (int v = 0; v < n_; ++v) eps_[v][v] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int p = 0; p < n_; ++p)
        for (const Arc& a : g_.arcs)
          for (int dir : {1, -1}) {
            // p =eps=> s --x--> r =eps=> r2 --x^-1--> q
            const int s = dir > 0 ? a.src : a.dst, r = dir > 0 ? a.dst : a.src;
            if (!eps_[p][s]) continue;
            for (int r2 = 0; r2 < n_; ++r2) {
              if (!eps_[r][r2]) continue;
              for (const Arc& b : g_.arcs) {
                if (b.gen != a.gen) continue;
                // reading x^-1 from r2: x = (gen, dir), so x^-1 uses b backwards if dir > 0
                const int from = dir > 0 ? b.dst : b.src, to = dir > 0 ? b.src : b.dst;
                if (from != r2) continue;
                for (int q = 0; q < n_; ++q)
                  if (eps_[to][q] && !eps_[p][q]) eps_[p][q] = 1, changed = true;
              }
            }
          }
      for (int k = 0; k < n_; ++k)
        for (int p = 0; p < n_; ++p)
          if (eps_[p][k])
            for (int q = 0; q < n_; ++q)
              if (eps_[k][q] && !eps_[p][q]) eps_[p][q] = 1, changed = true;
    }
  }

  bool accepts(const FreeWord& reduced_word) const {
    std::vector<char> cur(n_, 0);
    for (int q = 0; q < n_; ++q) cur[q] = eps_[g_.basepoint][q];
    for (const Letter& l : reduced_word) {
      std::vector<char> nxt(n_, 0);
      for (const Arc& a : g_.arcs) {
        if (a.gen != l.gen) continue;
        const int from = l.exp > 0 ? a.src : a.dst, to = l.exp > 0 ? a.dst : a.src;
        if (!cur[from]) continue;
        for (int q = 0; q < n_; ++q)
          if (eps_[to][q]) nxt[q] = 1;
      }
      cur = std::move(nxt);
    }
    return cur[g_.basepoint] != 0;
  }

 private:
  const DirectedLabeledGraph& g_;
  int n_;
  std::vector<std::vector<char>> eps_;
};

}  // namespace oracles
