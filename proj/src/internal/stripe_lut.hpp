#pragma once

#include <array>
#include <stdexcept>

#include "subseq/block_kernel.hpp"
#include "subseq/tabulation.hpp"

namespace subseq::internal {

/// Fills every key of a stripe LUT for a fixed block of B codes. Keys whose
/// differential fields hold an illegal code are left zero.
template <class Rule>
BlockLut<typename Rule::Word> build_stripe_lut(std::span<const std::uint32_t> b_codes, const StripeLayout& layout) {
  if (b_codes.size() != layout.x2) throw std::invalid_argument("stripe LUT: B block length must equal x2");
  const unsigned key_bits = layout.key_bits();
  if (key_bits > kMaxMaterializedKeyBits) throw std::invalid_argument("stripe LUT: key too wide to materialize");

  BlockLut<typename Rule::Word> lut(key_bits);
  const OutputCodec<Rule> codec{layout.x1, layout.x2};
  const std::uint64_t code_space = std::uint64_t{1} << (layout.x1 * layout.code_bits);
  const std::uint64_t top_space = std::uint64_t{1} << layout.top_bits();
  const std::uint64_t left_space = std::uint64_t{1} << layout.left_bits();
  const std::uint64_t code_mask = (std::uint64_t{1} << layout.code_bits) - 1;

  std::array<std::uint32_t, kMaxBlockSide> a_codes{};
  for (std::uint64_t packed = 0; packed < code_space; ++packed) {
    for (unsigned c = 0; c < layout.x1; ++c)
      a_codes[c] = static_cast<std::uint32_t>((packed >> (c * layout.code_bits)) & code_mask);
    auto match = [&](unsigned c, unsigned r) { return a_codes[c] == b_codes[r]; };
    for (std::uint64_t top = 0; top < top_space; ++top) {
      if (!valid_run<Rule>(top, layout.x1)) continue;
      for (std::uint64_t left = 0; left < left_space; ++left) {
        if (!valid_run<Rule>(left, layout.x2)) continue;
        const BlockOutput out = solve_block<Rule>(layout.x1, layout.x2, top, left, match);
        lut.set(layout.key(left, top, packed), codec.pack(out));
      }
    }
  }
  return lut;
}

}  // namespace subseq::internal
