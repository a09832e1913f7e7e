#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subseq/aux_memory.hpp"
#include "subseq/block_kernel.hpp"
#include "subseq/counters.hpp"
#include "subseq/dp_reference.hpp"
#include "subseq/sequence.hpp"

namespace subseq {

inline constexpr unsigned kDefaultKeyBudget = 22;
/// Hard ceiling on the width of any dense lookup table we materialize.
inline constexpr unsigned kMaxMaterializedKeyBits = 30;

/// Block and superblock geometry for the stripe engine. Blocks are x1 symbols
/// of A wide and x2 symbols of B tall; a stripe is x2 rows of B; alphabets are
/// remapped per superblock row of y symbols of B.
struct TabulationParams {
  unsigned x1 = 1;
  unsigned x2 = 1;
  unsigned y = 1;
  unsigned key_budget_bits = kDefaultKeyBudget;
  unsigned value_bits = 32;

  /// Upper bound on the LUT key width, x1 * ceil(log2(2(y+1))) + x2 for LCS.
  /// Edit distance spends two bits per differential.
  [[nodiscard]] unsigned key_bound_bits(DpKind kind = DpKind::lcs) const noexcept;
  /// Width of a packed LUT value.
  [[nodiscard]] unsigned value_bound_bits(DpKind kind = DpKind::lcs) const noexcept;

  /// Throws std::invalid_argument when a geometry or bit-budget invariant fails.
  void validate(DpKind kind = DpKind::lcs) const;

  friend bool operator==(const TabulationParams&, const TabulationParams&) = default;
};

/// Largest (x1, x2, y) that meets the key budget, capped by
/// x1 <= log n / (4 log log n), x2 <= log n / 4, y <= log^2 n / 2 with
/// n = max(n, m); x2 always divides y. Tiny inputs degrade to x1 = x2 = 1.
TabulationParams choose_params(std::uint64_t n, std::uint64_t m, unsigned key_budget_bits = kDefaultKeyBudget,
                               DpKind kind = DpKind::lcs);

/// Per-superblock alphabet: the q distinct symbols of a B segment, numbered
/// 0..q-1 in sorted order; any other symbol maps to the sentinel q.
class SuperblockCode {
 public:
  /// `alphabet_bound` sizes a flat lookup table; pass 0 (or a huge bound) to
  /// fall back to binary search over the sorted symbols.
  explicit SuperblockCode(std::uint64_t alphabet_bound = 0);

  void assign(std::span<const Symbol> segment);

  [[nodiscard]] std::uint32_t q() const noexcept { return static_cast<std::uint32_t>(sorted_.size()); }
  [[nodiscard]] std::uint32_t sentinel() const noexcept { return q(); }
  [[nodiscard]] std::span<const Symbol> symbols() const noexcept { return sorted_; }

  [[nodiscard]] std::uint32_t code(Symbol s) const noexcept {
    if (!table_.empty()) {
      if (s >= table_.size()) return q();
      const std::uint32_t v = table_[s];
      return v == kAbsent ? q() : v;
    }
    return code_by_search(s);
  }

  /// Code of s + shift, where the shifted value may leave the symbol range.
  [[nodiscard]] std::uint32_t code_shifted(Symbol s, std::int64_t shift) const noexcept {
    const std::int64_t v = static_cast<std::int64_t>(s) + shift;
    if (v < 0 || v > static_cast<std::int64_t>(UINT32_MAX)) return q();
    return code(static_cast<Symbol>(v));
  }

 private:
  static constexpr std::uint32_t kAbsent = UINT32_MAX;
  [[nodiscard]] std::uint32_t code_by_search(Symbol s) const noexcept;

  std::vector<Symbol> sorted_;
  aux_vector<std::uint32_t> table_;
};

SuperblockCode build_superblock_code(const Sequence& b_segment);

std::vector<std::uint32_t> remap_a_snippet(const Sequence& a_segment, const SuperblockCode& code);

/// Dense packed-key -> packed-value table of precomputed block transitions.
template <class Word>
class BlockLut {
 public:
  BlockLut() = default;
  explicit BlockLut(unsigned key_bits) : key_bits_(key_bits), entries_(std::size_t{1} << key_bits, Word{0}) {}

  [[nodiscard]] unsigned key_bits() const noexcept { return key_bits_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] std::size_t bytes() const noexcept { return entries_.size() * sizeof(Word); }
  [[nodiscard]] std::uint64_t built() const noexcept { return built_; }

  [[nodiscard]] Word operator[](std::uint64_t key) const noexcept { return entries_[key]; }
  void set(std::uint64_t key, Word value) noexcept {
    entries_[key] = value;
    ++built_;
  }

 private:
  unsigned key_bits_ = 0;
  std::uint64_t built_ = 0;
  aux_vector<Word> entries_;
};

/// Key layout of a stripe LUT, low to high: x2 left differentials, x1 top
/// differentials, then x1 symbol codes of `code_bits` each.
struct StripeLayout {
  unsigned x1 = 1;
  unsigned x2 = 1;
  unsigned code_bits = 1;
  unsigned diff_bits = 1;

  [[nodiscard]] unsigned left_bits() const noexcept { return x2 * diff_bits; }
  [[nodiscard]] unsigned top_bits() const noexcept { return x1 * diff_bits; }
  [[nodiscard]] unsigned key_bits() const noexcept { return left_bits() + top_bits() + x1 * code_bits; }

  [[nodiscard]] std::uint64_t pack_codes(std::span<const std::uint32_t> codes) const noexcept {
    std::uint64_t packed = 0;
    for (unsigned c = 0; c < codes.size(); ++c) packed |= std::uint64_t{codes[c]} << (c * code_bits);
    return packed;
  }
  [[nodiscard]] std::uint64_t key(std::uint64_t left, std::uint64_t top, std::uint64_t packed_codes) const noexcept {
    return left | (top << left_bits()) | (packed_codes << (left_bits() + top_bits()));
  }
};

/// Code width for a superblock alphabet of at most q_max symbols plus sentinel.
unsigned code_bits_for(std::uint32_t q_max) noexcept;

/// Every (left, top, A-codes) key for one stripe whose B block is fixed.
/// Throws std::invalid_argument if the key is wider than the budget.
BlockLut<LcsRule::Word> build_stripe_lut(std::span<const std::uint32_t> b_block_codes, const TabulationParams& params,
                                         std::uint32_t q_max);
BlockLut<EditRule::Word> build_edit_stripe_lut(std::span<const std::uint32_t> b_block_codes,
                                               const TabulationParams& params, std::uint32_t q_max);

/// Stripe-wise tabulated LCS. Inputs are renumbered to a dense alphabet first.
std::int64_t lcs_tabulated(const Sequence& a, const Sequence& b, const TabulationParams& params,
                           EngineCounters* counters = nullptr);
/// Same, with parameters from choose_params.
std::int64_t lcs_tabulated(const Sequence& a, const Sequence& b, EngineCounters* counters = nullptr);

}  // namespace subseq
