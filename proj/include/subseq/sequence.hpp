#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace subseq {

using Symbol = std::uint32_t;

/// Integer-alphabet symbol array. Every symbol fits in 32 bits; the alphabet
/// bound is one past the largest stored symbol (0 for an empty sequence).
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<Symbol> symbols);
  Sequence(std::initializer_list<Symbol> symbols);

  /// One symbol per byte.
  static Sequence from_bytes(std::string_view bytes);

  [[nodiscard]] std::span<const Symbol> symbols() const noexcept { return symbols_; }
  [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
  [[nodiscard]] bool empty() const noexcept { return symbols_.empty(); }
  [[nodiscard]] Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
  [[nodiscard]] auto begin() const noexcept { return symbols_.begin(); }
  [[nodiscard]] auto end() const noexcept { return symbols_.end(); }

  [[nodiscard]] std::uint64_t alphabet_bound() const noexcept { return bound_; }

  /// Contiguous slice [first, first + count), clamped to the sequence end.
  [[nodiscard]] Sequence slice(std::size_t first, std::size_t count) const;

  friend bool operator==(const Sequence& l, const Sequence& r) noexcept {
    return l.symbols_ == r.symbols_;
  }

 private:
  std::vector<Symbol> symbols_;
  std::uint64_t bound_ = 0;
};

struct NormalizedPair {
  Sequence a;
  Sequence b;
  std::uint32_t sigma = 0;
};

struct NormalizedTriple {
  Sequence a;
  Sequence b;
  Sequence p;
  std::uint32_t sigma = 0;
};

/// Maps the inputs onto {0 .. sigma-1}, numbering the distinct symbols in
/// increasing order. Equality between any two positions (within or across
/// the inputs) is preserved.
NormalizedPair normalize_alphabet(const Sequence& a, const Sequence& b);
NormalizedTriple normalize_alphabet(const Sequence& a, const Sequence& b, const Sequence& p);

struct AlphabetStats {
  std::vector<std::uint64_t> histogram_a;
  std::vector<std::uint64_t> histogram_b;
  std::uint64_t match_count_r = 0;
};

/// Histograms over the dense alphabet {0 .. sigma-1} plus r. Inputs are
/// expected to be normalized; symbols >= sigma are rejected.
AlphabetStats alphabet_stats(const Sequence& a, const Sequence& b, std::uint32_t sigma);

/// r = number of pairs (i, j) with a[i] == b[j], via per-symbol histograms.
std::uint64_t count_matches(const Sequence& a, const Sequence& b);

/// A match inside a block, 1-based and local to the block. `row` runs along
/// B (the stripe direction), `col` along A.
struct LocalMatch {
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  friend bool operator==(const LocalMatch&, const LocalMatch&) = default;
};

/// Matches grouped by block. Blocks tile the DP matrix in stripes of
/// `block_rows` positions of B, each stripe cut into blocks of `block_cols`
/// positions of A; the last stripe / last block of a stripe may be ragged.
/// A block owns its interior cells and its bottom/right border, so every
/// match lands in exactly one block. Per-block lists are sorted row-major.
class MatchIndex {
 public:
  MatchIndex() = default;
  MatchIndex(std::size_t n, std::size_t m, std::size_t block_rows, std::size_t block_cols,
             std::vector<std::size_t> offsets, std::vector<LocalMatch> matches);

  [[nodiscard]] std::size_t block_rows() const noexcept { return block_rows_; }
  [[nodiscard]] std::size_t block_cols() const noexcept { return block_cols_; }
  [[nodiscard]] std::size_t stripes() const noexcept { return stripes_; }
  [[nodiscard]] std::size_t blocks_per_stripe() const noexcept { return blocks_per_stripe_; }
  [[nodiscard]] std::size_t block_count() const noexcept { return stripes_ * blocks_per_stripe_; }
  [[nodiscard]] std::size_t total() const noexcept { return matches_.size(); }

  /// Height (along B) and width (along A) of a block; smaller on ragged edges.
  [[nodiscard]] std::size_t block_height(std::size_t stripe) const noexcept;
  [[nodiscard]] std::size_t block_width(std::size_t column) const noexcept;

  [[nodiscard]] std::span<const LocalMatch> block(std::size_t stripe, std::size_t column) const;
  [[nodiscard]] std::span<const LocalMatch> block(std::size_t flat_index) const;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t block_rows_ = 1;
  std::size_t block_cols_ = 1;
  std::size_t stripes_ = 0;
  std::size_t blocks_per_stripe_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<LocalMatch> matches_;
};

/// Groups every match of (a, b) by block in O(n + m + r + block count).
MatchIndex enumerate_block_matches(const Sequence& a, const Sequence& b, std::size_t block_rows,
                                   std::size_t block_cols);

}  // namespace subseq
