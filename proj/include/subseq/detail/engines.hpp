#pragma once

#include <cstdint>
#include <span>

#include "subseq/counters.hpp"
#include "subseq/sequence.hpp"
#include "subseq/sparse_hybrid.hpp"
#include "subseq/tabulation.hpp"

namespace subseq::detail {

/// Engine input: A and B with symbols below `alphabet_bound`; A[i] matches
/// B[j] iff A[i] + shift == B[j]. shift = 0 is plain equality.
struct MatchView {
  std::span<const Symbol> a;
  std::span<const Symbol> b;
  std::uint32_t alphabet_bound = 0;
  std::int64_t shift = 0;

  [[nodiscard]] bool matches(std::size_t i, std::size_t j) const noexcept {
    return static_cast<std::int64_t>(a[i]) + shift == static_cast<std::int64_t>(b[j]);
  }
};

std::int64_t tabulated_lcs(const MatchView& v, const TabulationParams& params, EngineCounters* counters);
std::int64_t tabulated_edit(const MatchView& v, const TabulationParams& params, EngineCounters* counters);

std::int64_t hybrid_lcs(const MatchView& v, const HybridParams& params, EngineCounters* counters);
std::int64_t hybrid_edit(const MatchView& v, const HybridParams& params, EngineCounters* counters);

/// Plain O(nm) LCS under the shifted predicate.
std::int64_t naive_lcs(const MatchView& v);

}  // namespace subseq::detail
