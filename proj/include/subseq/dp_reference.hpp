#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subseq/sequence.hpp"

namespace subseq {

enum class DpKind { lcs, edit };

/// Full (n+1) x (m+1) DP matrix, row i for A[1..i], column j for B[1..j].
class DpMatrix {
 public:
  DpMatrix(std::size_t n, std::size_t m, DpKind kind);

  [[nodiscard]] std::size_t rows() const noexcept { return n_ + 1; }
  [[nodiscard]] std::size_t cols() const noexcept { return m_ + 1; }
  [[nodiscard]] DpKind kind() const noexcept { return kind_; }

  [[nodiscard]] std::int64_t at(std::size_t i, std::size_t j) const { return values_[i * (m_ + 1) + j]; }
  std::int64_t& at(std::size_t i, std::size_t j) { return values_[i * (m_ + 1) + j]; }

  /// True when every vertical and horizontal difference is in {0,1} (LCS)
  /// or {-1,0,1} (edit distance).
  [[nodiscard]] bool adjacency_holds() const;

 private:
  std::size_t n_;
  std::size_t m_;
  DpKind kind_;
  std::vector<std::int64_t> values_;
};

/// Classic O(nm) LCS length with two rolling rows.
std::int64_t lcs_naive(const Sequence& a, const Sequence& b);

/// Same recurrence, retaining the whole matrix. Throws std::logic_error if an
/// adjacency invariant breaks during the fill.
DpMatrix lcs_matrix(const Sequence& a, const Sequence& b);

/// Enumerates subsequences of the shorter input; guarded to length <= 20.
std::int64_t lcs_bruteforce(const Sequence& a, const Sequence& b);

/// Unit-cost Levenshtein distance.
std::int64_t edit_distance_naive(const Sequence& a, const Sequence& b);
DpMatrix edit_distance_matrix(const Sequence& a, const Sequence& b);

/// Hunt-Szymanski: threshold array updated only at matching cells,
/// O(n + m + r log m) after bucketing B's positions by symbol.
std::int64_t hunt_szymanski(const Sequence& a, const Sequence& b);

/// Longest subsequence of P that splits into a subsequence of A and one of B.
/// M(i,j,k) = max{M(i-1,j,k), M(i,j-1,k), M(i,j,k-1),
///                M(i-1,j,k-1)+1 if A_i = P_k, M(i,j-1,k-1)+1 if B_j = P_k}.
std::int64_t merlcs_naive(const Sequence& a, const Sequence& b, const Sequence& p);

/// Full (n+1) x (m+1) x (u+1) MerLCS table.
class MerlcsCube {
 public:
  MerlcsCube(std::size_t n, std::size_t m, std::size_t u);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t m() const noexcept { return m_; }
  [[nodiscard]] std::size_t u() const noexcept { return u_; }

  [[nodiscard]] std::int64_t at(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * (m_ + 1) + j) * (u_ + 1) + k];
  }
  std::int64_t& at(std::size_t i, std::size_t j, std::size_t k) {
    return values_[(i * (m_ + 1) + j) * (u_ + 1) + k];
  }

  /// Differences along every axis within {lo, hi}.
  [[nodiscard]] bool adjacency_within(std::int64_t lo, std::int64_t hi) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t u_;
  std::vector<std::int64_t> values_;
};

MerlcsCube merlcs_cube(const Sequence& a, const Sequence& b, const Sequence& p);

/// Enumerates every subsequence of P (|P| <= 14) and keeps the longest one
/// that can be 2-coloured into a subsequence of A and a subsequence of B.
std::int64_t merlcs_bruteforce(const Sequence& a, const Sequence& b, const Sequence& p);

inline constexpr std::size_t kLcsBruteforceLimit = 20;
inline constexpr std::size_t kMerlcsBruteforceLimit = 14;

}  // namespace subseq
