#pragma once

// Independent reference implementations and generators for the test suites.
// Nothing here calls into the library's engines or block kernel.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "subseq/sequence.hpp"

namespace oracle {

using subseq::Sequence;
using subseq::Symbol;

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::uint64_t below(std::uint64_t bound) { return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine);
  }
  Sequence sequence(std::size_t n, std::uint32_t sigma) {
    std::vector<Symbol> v(n);
    for (auto& s : v) s = static_cast<Symbol>(below(sigma));
    return Sequence(std::move(v));
  }
};

inline Sequence text(const char* s) { return Sequence::from_bytes(s); }

/// Full-matrix LCS, row i over a, column j over b.
inline std::vector<std::vector<std::int64_t>> lcs_table(const Sequence& a, const Sequence& b) {
  std::vector<std::vector<std::int64_t>> t(a.size() + 1, std::vector<std::int64_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
  return t;
}

inline std::int64_t lcs(const Sequence& a, const Sequence& b) { return lcs_table(a, b)[a.size()][b.size()]; }

inline std::vector<std::vector<std::int64_t>> edit_table(const Sequence& a, const Sequence& b) {
  std::vector<std::vector<std::int64_t>> t(a.size() + 1, std::vector<std::int64_t>(b.size() + 1, 0));
  for (std::size_t i = 0; i <= a.size(); ++i) t[i][0] = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) t[0][j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      t[i][j] = std::min({t[i - 1][j] + 1, t[i][j - 1] + 1, t[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return t;
}

inline std::int64_t edit(const Sequence& a, const Sequence& b) { return edit_table(a, b)[a.size()][b.size()]; }

/// Max over shifts t of LCS where a[i] + t == b[j].
inline std::int64_t lcts(const Sequence& a, const Sequence& b, std::uint32_t sigma) {
  std::int64_t best = 0;
  for (std::int64_t t = -static_cast<std::int64_t>(sigma) + 1; t < static_cast<std::int64_t>(sigma); ++t) {
    std::vector<Symbol> shifted;
    for (Symbol s : a) {
      const std::int64_t v = static_cast<std::int64_t>(s) + t;
      // Out-of-range shifted symbols can never match; park them above sigma.
      shifted.push_back(v < 0 || v >= static_cast<std::int64_t>(sigma) ? sigma + 1 : static_cast<Symbol>(v));
    }
    best = std::max(best, lcs(Sequence(shifted), b));
  }
  return best;
}

/// Decoded view of a block's input borders: values along the top row and the
/// left column, both anchored at 0 in the top-left corner.
struct BlockResult {
  std::vector<int> bottom;  // bottom-row differences, left to right
  std::vector<int> right;   // right-column differences, top to bottom
  int delta = 0;            // bottom-right minus top-left
};

/// Plain (w+1) x (h+1) DP over an explicit grid. `top[c]` / `left[r]` are the
/// border differences. `edit` selects the edit-distance recurrence.
inline BlockResult block_dp(unsigned w, unsigned h, const std::vector<int>& top, const std::vector<int>& left,
                            const std::function<bool(unsigned, unsigned)>& match, bool edit = false) {
  std::vector<std::vector<int>> g(h + 1, std::vector<int>(w + 1, 0));
  for (unsigned c = 1; c <= w; ++c) g[0][c] = g[0][c - 1] + top[c - 1];
  for (unsigned r = 1; r <= h; ++r) g[r][0] = g[r - 1][0] + left[r - 1];
  for (unsigned r = 1; r <= h; ++r)
    for (unsigned c = 1; c <= w; ++c) {
      const bool hit = match(c - 1, r - 1);
      g[r][c] = edit ? std::min({g[r - 1][c] + 1, g[r][c - 1] + 1, g[r - 1][c - 1] + (hit ? 0 : 1)})
                     : std::max({g[r - 1][c], g[r][c - 1], g[r - 1][c - 1] + (hit ? 1 : 0)});
    }
  BlockResult out;
  for (unsigned c = 1; c <= w; ++c) out.bottom.push_back(g[h][c] - g[h][c - 1]);
  for (unsigned r = 1; r <= h; ++r) out.right.push_back(g[r][w] - g[r - 1][w]);
  out.delta = g[h][w];
  return out;
}

/// MerLCS by full 3D table.
inline std::int64_t merlcs(const Sequence& a, const Sequence& b, const Sequence& p) {
  const std::size_t n = a.size(), m = b.size(), u = p.size();
  std::vector<std::int64_t> t((n + 1) * (m + 1) * (u + 1), 0);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> std::int64_t& { return t[(i * (m + 1) + j) * (u + 1) + k]; };
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= m; ++j)
      for (std::size_t k = 1; k <= u; ++k) {
        std::int64_t v = at(i, j, k - 1);
        if (i > 0) v = std::max(v, at(i - 1, j, k));
        if (j > 0) v = std::max(v, at(i, j - 1, k));
        if (i > 0 && a[i - 1] == p[k - 1]) v = std::max(v, at(i - 1, j, k - 1) + 1);
        if (j > 0 && b[j - 1] == p[k - 1]) v = std::max(v, at(i, j - 1, k - 1) + 1);
        at(i, j, k) = v;
      }
  return at(n, m, u);
}

inline std::uint64_t quadratic_matches(const Sequence& a, const Sequence& b) {
  std::uint64_t r = 0;
  for (Symbol x : a)
    for (Symbol y : b) r += x == y ? 1 : 0;
  return r;
}

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace oracle
