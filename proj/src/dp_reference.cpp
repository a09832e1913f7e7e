#include "subseq/dp_reference.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace subseq {

namespace {

bool is_subsequence(std::span<const Symbol> needle, std::span<const Symbol> hay) {
  std::size_t k = 0;
  for (Symbol c : hay) {
    if (k == needle.size()) break;
    if (needle[k] == c) ++k;
  }
  return k == needle.size();
}

void check_lcs_cell(const DpMatrix& d, std::size_t i, std::size_t j) {
  const auto up = d.at(i, j) - d.at(i - 1, j);
  const auto left = d.at(i, j) - d.at(i, j - 1);
  if (up < 0 || up > 1 || left < 0 || left > 1) throw std::logic_error("LCS adjacency invariant violated");
}

void check_edit_cell(const DpMatrix& d, std::size_t i, std::size_t j) {
  const auto up = d.at(i, j) - d.at(i - 1, j);
  const auto left = d.at(i, j) - d.at(i, j - 1);
  if (up < -1 || up > 1 || left < -1 || left > 1) throw std::logic_error("edit adjacency invariant violated");
}

}  // namespace

DpMatrix::DpMatrix(std::size_t n, std::size_t m, DpKind kind)
    : n_(n), m_(m), kind_(kind), values_((n + 1) * (m + 1), 0) {}

bool DpMatrix::adjacency_holds() const {
  const std::int64_t lo = kind_ == DpKind::lcs ? 0 : -1;
  for (std::size_t i = 0; i <= n_; ++i)
    for (std::size_t j = 0; j <= m_; ++j) {
      if (i > 0) {
        const auto d = at(i, j) - at(i - 1, j);
        if (d < lo || d > 1) return false;
      }
      if (j > 0) {
        const auto d = at(i, j) - at(i, j - 1);
        if (d < lo || d > 1) return false;
      }
    }
  return true;
}

std::int64_t lcs_naive(const Sequence& a, const Sequence& b) {
  const std::size_t m = b.size();
  std::vector<std::int32_t> row(m + 1, 0);
  for (Symbol ai : a) {
    std::int32_t diag = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int32_t up = row[j];
      row[j] = ai == b[j - 1] ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row[m];
}

DpMatrix lcs_matrix(const Sequence& a, const Sequence& b) {
  DpMatrix d(a.size(), b.size(), DpKind::lcs);
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d.at(i, j) = a[i - 1] == b[j - 1] ? d.at(i - 1, j - 1) + 1 : std::max(d.at(i - 1, j), d.at(i, j - 1));
      check_lcs_cell(d, i, j);
    }
  return d;
}

std::int64_t lcs_bruteforce(const Sequence& a, const Sequence& b) {
  const bool a_shorter = a.size() <= b.size();
  const auto shorter = a_shorter ? a.symbols() : b.symbols();
  const auto longer = a_shorter ? b.symbols() : a.symbols();
  if (shorter.size() > kLcsBruteforceLimit) throw std::invalid_argument("lcs_bruteforce: input too long");

  int best = 0;
  std::vector<Symbol> pick;
  const std::uint32_t limit = std::uint32_t{1} << shorter.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const int bits = std::popcount(mask);
    if (bits <= best) continue;
    pick.clear();
    for (std::size_t k = 0; k < shorter.size(); ++k)
      if (mask >> k & 1U) pick.push_back(shorter[k]);
    if (is_subsequence(pick, longer)) best = bits;
  }
  return best;
}

std::int64_t edit_distance_naive(const Sequence& a, const Sequence& b) {
  const std::size_t m = b.size();
  std::vector<std::int32_t> row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = static_cast<std::int32_t>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::int32_t diag = row[0];
    row[0] = static_cast<std::int32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int32_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[m];
}

DpMatrix edit_distance_matrix(const Sequence& a, const Sequence& b) {
  DpMatrix d(a.size(), b.size(), DpKind::edit);
  for (std::size_t i = 0; i <= a.size(); ++i) d.at(i, 0) = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d.at(0, j) = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d.at(i, j) = std::min({d.at(i - 1, j) + 1, d.at(i, j - 1) + 1,
                             d.at(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
      check_edit_cell(d, i, j);
    }
  return d;
}

std::int64_t hunt_szymanski(const Sequence& a, const Sequence& b) {
  if (a.empty() || b.empty()) return 0;
  const auto norm = normalize_alphabet(a, b);

  // Positions of each symbol in B, bucketed by symbol in ascending order.
  std::vector<std::uint32_t> start(norm.sigma + 1, 0);
  for (Symbol c : norm.b) ++start[c + 1];
  for (std::uint32_t c = 0; c < norm.sigma; ++c) start[c + 1] += start[c];
  std::vector<std::uint32_t> pos(b.size());
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::uint32_t j = 0; j < b.size(); ++j) pos[fill[norm.b[j]]++] = j;
  }

  // thresh[k] = smallest j such that an LCS of length k+1 ends at B[j].
  std::vector<std::uint32_t> thresh;
  for (Symbol c : norm.a) {
    // Descending j so one row of A cannot chain two of its own matches.
    for (std::uint32_t t = start[c + 1]; t-- > start[c];) {
      const std::uint32_t j = pos[t];
      const auto it = std::lower_bound(thresh.begin(), thresh.end(), j);
      if (it == thresh.end())
        thresh.push_back(j);
      else
        *it = j;
    }
  }
  return static_cast<std::int64_t>(thresh.size());
}

MerlcsCube::MerlcsCube(std::size_t n, std::size_t m, std::size_t u)
    : n_(n), m_(m), u_(u), values_((n + 1) * (m + 1) * (u + 1), 0) {}

bool MerlcsCube::adjacency_within(std::int64_t lo, std::int64_t hi) const {
  auto ok = [lo, hi](std::int64_t d) { return d >= lo && d <= hi; };
  for (std::size_t i = 0; i <= n_; ++i)
    for (std::size_t j = 0; j <= m_; ++j)
      for (std::size_t k = 0; k <= u_; ++k) {
        const auto v = at(i, j, k);
        if (i > 0 && !ok(v - at(i - 1, j, k))) return false;
        if (j > 0 && !ok(v - at(i, j - 1, k))) return false;
        if (k > 0 && !ok(v - at(i, j, k - 1))) return false;
      }
  return true;
}

MerlcsCube merlcs_cube(const Sequence& a, const Sequence& b, const Sequence& p) {
  MerlcsCube c(a.size(), b.size(), p.size());
  for (std::size_t i = 0; i <= a.size(); ++i)
    for (std::size_t j = 0; j <= b.size(); ++j)
      for (std::size_t k = 1; k <= p.size(); ++k) {
        std::int64_t v = c.at(i, j, k - 1);
        if (i > 0) {
          v = std::max(v, c.at(i - 1, j, k));
          if (a[i - 1] == p[k - 1]) v = std::max(v, c.at(i - 1, j, k - 1) + 1);
        }
        if (j > 0) {
          v = std::max(v, c.at(i, j - 1, k));
          if (b[j - 1] == p[k - 1]) v = std::max(v, c.at(i, j - 1, k - 1) + 1);
        }
        c.at(i, j, k) = v;
        if (i > 0 && v - c.at(i - 1, j, k) > 1) throw std::logic_error("MerLCS adjacency invariant violated");
        if (j > 0 && v - c.at(i, j - 1, k) > 1) throw std::logic_error("MerLCS adjacency invariant violated");
        if (v - c.at(i, j, k - 1) > 1) throw std::logic_error("MerLCS adjacency invariant violated");
      }
  return c;
}

std::int64_t merlcs_naive(const Sequence& a, const Sequence& b, const Sequence& p) {
  const std::size_t m = b.size();
  const std::size_t u = p.size();
  const std::size_t plane = (m + 1) * (u + 1);
  // Two i-planes of (m+1) x (u+1).
  std::vector<std::int32_t> prev(plane, 0);
  std::vector<std::int32_t> cur(plane, 0);
  auto idx = [u](std::size_t j, std::size_t k) { return j * (u + 1) + k; };
  for (std::size_t i = 0; i <= a.size(); ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      cur[idx(j, 0)] = 0;
      for (std::size_t k = 1; k <= u; ++k) {
        std::int32_t v = cur[idx(j, k - 1)];
        if (i > 0) {
          v = std::max(v, prev[idx(j, k)]);
          if (a[i - 1] == p[k - 1]) v = std::max(v, prev[idx(j, k - 1)] + 1);
        }
        if (j > 0) {
          v = std::max(v, cur[idx(j - 1, k)]);
          if (b[j - 1] == p[k - 1]) v = std::max(v, cur[idx(j - 1, k - 1)] + 1);
        }
        cur[idx(j, k)] = v;
      }
    }
    std::swap(prev, cur);
  }
  return prev[idx(m, u)];
}

std::int64_t merlcs_bruteforce(const Sequence& a, const Sequence& b, const Sequence& p) {
  const std::size_t u = p.size();
  if (u > kMerlcsBruteforceLimit) throw std::invalid_argument("merlcs_bruteforce: P too long");
  const std::size_t n = a.size();
  const std::size_t m = b.size();

  // next_x[pos][c]: smallest index >= pos holding symbol c, or size when absent.
  const auto norm = normalize_alphabet(a, b, p);
  const std::size_t sigma = norm.sigma;
  auto next_table = [sigma](const Sequence& s) {
    std::vector<std::uint32_t> t((s.size() + 1) * sigma, static_cast<std::uint32_t>(s.size()));
    for (std::size_t pos = s.size(); pos-- > 0;) {
      for (std::size_t c = 0; c < sigma; ++c) t[pos * sigma + c] = t[(pos + 1) * sigma + c];
      t[pos * sigma + s[pos]] = static_cast<std::uint32_t>(pos);
    }
    return t;
  };
  const auto next_a = next_table(norm.a);
  const auto next_b = next_table(norm.b);

  constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
  // reach[pa] = least number of B symbols consumed after embedding the colour-A
  // symbols greedily into A[0..pa).
  std::vector<std::uint32_t> reach(n + 1);
  std::vector<std::uint32_t> next(n + 1);
  auto feasible = [&](std::uint32_t mask) {
    std::fill(reach.begin(), reach.end(), kUnreached);
    reach[0] = 0;
    for (std::size_t k = 0; k < u; ++k) {
      if (!(mask >> k & 1U)) continue;
      const Symbol c = norm.p[k];
      std::fill(next.begin(), next.end(), kUnreached);
      bool any = false;
      for (std::size_t pa = 0; pa <= n; ++pa) {
        const std::uint32_t pb = reach[pa];
        if (pb == kUnreached) continue;
        if (pa < n) {
          const std::uint32_t x = next_a[pa * sigma + c];
          if (x < n) {
            next[x + 1] = std::min(next[x + 1], pb);
            any = true;
          }
        }
        if (pb < m) {
          const std::uint32_t y = next_b[pb * sigma + c];
          if (y < m) {
            next[pa] = std::min(next[pa], y + 1);
            any = true;
          }
        }
      }
      if (!any) return false;
      std::swap(reach, next);
    }
    return true;
  };

  int best = 0;
  const std::uint32_t limit = std::uint32_t{1} << u;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const int bits = std::popcount(mask);
    if (bits > best && feasible(mask)) best = bits;
  }
  return best;
}

}  // namespace subseq
