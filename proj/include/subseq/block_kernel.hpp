#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "subseq/dp_reference.hpp"

namespace subseq {

inline constexpr unsigned kMaxBlockSide = 32;

/// LCS cell rule. Differences between adjacent cells are in {0,1} and are
/// stored as themselves in one bit.
struct LcsRule {
  using Word = std::uint32_t;
  static constexpr DpKind kind = DpKind::lcs;
  static constexpr unsigned diff_bits = 1;
  static constexpr int diff_offset = 0;
  /// Difference between consecutive cells on the matrix's own top/left border.
  static constexpr int border_diff = 0;

  static constexpr int cell(int up, int left, int diag, bool match) noexcept {
    return std::max({up, left, diag + (match ? 1 : 0)});
  }
  static constexpr unsigned delta_offset(unsigned width, unsigned height) noexcept {
    (void)width;
    (void)height;
    return 0;
  }
  static constexpr unsigned delta_bits(unsigned width, unsigned height) noexcept {
    return static_cast<unsigned>(std::bit_width(std::max(width, height)));
  }
};

/// Unit-cost edit distance rule. Differences are in {-1,0,1}, stored as
/// diff + 1 in two bits; code 3 never occurs.
struct EditRule {
  using Word = std::uint64_t;
  static constexpr DpKind kind = DpKind::edit;
  static constexpr unsigned diff_bits = 2;
  static constexpr int diff_offset = 1;
  static constexpr int border_diff = 1;

  static constexpr int cell(int up, int left, int diag, bool match) noexcept {
    return std::min({up + 1, left + 1, diag + (match ? 0 : 1)});
  }
  static constexpr unsigned delta_offset(unsigned width, unsigned height) noexcept {
    return std::max(width, height);
  }
  static constexpr unsigned delta_bits(unsigned width, unsigned height) noexcept {
    return static_cast<unsigned>(std::bit_width(2 * std::max(width, height)));
  }
};

/// Output border of a block: `bottom` holds one packed difference per column
/// (left to right), `right` one per row (top to bottom), and `delta` is the
/// bottom-right value minus the top-left value.
struct BlockOutput {
  std::uint64_t bottom = 0;
  std::uint64_t right = 0;
  int delta = 0;

  friend bool operator==(const BlockOutput&, const BlockOutput&) = default;
};

template <class Rule>
constexpr std::uint64_t field_mask() noexcept {
  return (std::uint64_t{1} << Rule::diff_bits) - 1;
}

template <class Rule>
constexpr int decode_diff(std::uint64_t packed, unsigned index) noexcept {
  return static_cast<int>((packed >> (index * Rule::diff_bits)) & field_mask<Rule>()) - Rule::diff_offset;
}

template <class Rule>
constexpr std::uint64_t encode_diff(int diff, unsigned index) noexcept {
  return static_cast<std::uint64_t>(diff + Rule::diff_offset) << (index * Rule::diff_bits);
}

/// Packs `count` copies of the matrix border difference.
template <class Rule>
constexpr std::uint64_t border_run(unsigned count) noexcept {
  std::uint64_t out = 0;
  for (unsigned k = 0; k < count; ++k) out |= encode_diff<Rule>(Rule::border_diff, k);
  return out;
}

/// Sum of the decoded differences in a packed run.
template <class Rule>
constexpr int sum_diffs(std::uint64_t packed, unsigned count) noexcept {
  int s = 0;
  for (unsigned k = 0; k < count; ++k) s += decode_diff<Rule>(packed, k);
  return s;
}

/// True when every field of a packed run decodes to a legal difference.
template <class Rule>
constexpr bool valid_run(std::uint64_t packed, unsigned count) noexcept {
  if constexpr (Rule::diff_bits == 1) {
    return true;
  } else {
    for (unsigned k = 0; k < count; ++k)
      if (((packed >> (k * Rule::diff_bits)) & field_mask<Rule>()) == 3) return false;
    return true;
  }
}

/// Runs the cell recurrence over a width x height block whose top-left corner
/// is taken as 0. `top` carries `width` differences along the input row,
/// `left` carries `height` differences down the input column. match(c, r)
/// reports whether the symbols of interior column c and row r (0-based) match.
template <class Rule, class Match>
BlockOutput solve_block(unsigned width, unsigned height, std::uint64_t top, std::uint64_t left, Match&& match) {
  int row[kMaxBlockSide + 1];
  row[0] = 0;
  for (unsigned c = 0; c < width; ++c) row[c + 1] = row[c] + decode_diff<Rule>(top, c);

  BlockOutput out;
  for (unsigned r = 0; r < height; ++r) {
    const int above_right = row[width];
    int diag = row[0];
    row[0] += decode_diff<Rule>(left, r);
    for (unsigned c = 1; c <= width; ++c) {
      const int up = row[c];
      row[c] = Rule::cell(up, row[c - 1], diag, match(c - 1, r));
      diag = up;
    }
    out.right |= encode_diff<Rule>(row[width] - above_right, r);
  }
  for (unsigned c = 0; c < width; ++c) out.bottom |= encode_diff<Rule>(row[c + 1] - row[c], c);
  out.delta = row[width];
  return out;
}

/// Bit layout of a packed block output: bottom diffs, then right diffs, then
/// the corner delta shifted to be non-negative.
template <class Rule>
struct OutputCodec {
  unsigned width = 1;
  unsigned height = 1;

  [[nodiscard]] constexpr unsigned bottom_bits() const noexcept { return width * Rule::diff_bits; }
  [[nodiscard]] constexpr unsigned right_bits() const noexcept { return height * Rule::diff_bits; }
  [[nodiscard]] constexpr unsigned total_bits() const noexcept {
    return bottom_bits() + right_bits() + Rule::delta_bits(width, height);
  }

  [[nodiscard]] typename Rule::Word pack(const BlockOutput& o) const noexcept {
    const auto delta = static_cast<std::uint64_t>(o.delta + static_cast<int>(Rule::delta_offset(width, height)));
    return static_cast<typename Rule::Word>(o.bottom | (o.right << bottom_bits()) |
                                            (delta << (bottom_bits() + right_bits())));
  }

  [[nodiscard]] BlockOutput unpack(typename Rule::Word w) const noexcept {
    const std::uint64_t v = w;
    BlockOutput o;
    o.bottom = v & low_mask(bottom_bits());
    o.right = (v >> bottom_bits()) & low_mask(right_bits());
    o.delta = static_cast<int>(v >> (bottom_bits() + right_bits())) -
              static_cast<int>(Rule::delta_offset(width, height));
    return o;
  }

  static constexpr std::uint64_t low_mask(unsigned bits) noexcept {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  }
};

}  // namespace subseq
