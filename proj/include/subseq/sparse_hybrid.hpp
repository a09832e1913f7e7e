#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "subseq/block_kernel.hpp"
#include "subseq/counters.hpp"
#include "subseq/sequence.hpp"
#include "subseq/tabulation.hpp"

namespace subseq {

enum class DenseStrategy { tabulated, direct_dp };

/// Square (b+1) x (b+1) blocks; a block is sparse when it holds at most K
/// interior matches.
struct HybridParams {
  unsigned b = 1;
  unsigned k = 1;
  unsigned key_budget_bits = kDefaultKeyBudget;
  DenseStrategy dense_strategy = DenseStrategy::tabulated;

  /// Bits per match coordinate, ceil(log2(b^2)).
  [[nodiscard]] unsigned coord_bits() const noexcept;
  /// Bits of the match-count prefix, enough for min(K, b^2).
  [[nodiscard]] unsigned count_bits() const noexcept;
  /// Full sparse key: two borders, the count prefix, K coordinate slots.
  [[nodiscard]] unsigned key_bits(DpKind kind = DpKind::lcs) const noexcept;

  void validate(DpKind kind = DpKind::lcs) const;

  friend bool operator==(const HybridParams&, const HybridParams&) = default;
};

/// K = max(1, floor(log n / log log n)), then the largest b whose sparse key
/// fits the budget.
HybridParams choose_hybrid_params(std::uint64_t n, std::uint64_t m, unsigned key_budget_bits = kDefaultKeyBudget,
                                  DpKind kind = DpKind::lcs);

/// Input of a sparse block: both borders plus the sorted match cells, each a
/// row-major cell index (row - 1) * b + (col - 1).
struct SparseBlockKey {
  std::uint64_t top = 0;
  std::uint64_t left = 0;
  std::vector<std::uint32_t> cells;

  [[nodiscard]] std::uint64_t pack(const HybridParams& params, DpKind kind = DpKind::lcs) const;
  static SparseBlockKey unpack(std::uint64_t key, const HybridParams& params, DpKind kind = DpKind::lcs);
};

struct BlockCensus {
  std::vector<std::uint32_t> counts;  ///< per block, in MatchIndex order
  std::vector<bool> dense;
  std::uint64_t dense_blocks = 0;
  double f_d = 0.0;
};

BlockCensus classify_blocks(const MatchIndex& matches, const HybridParams& params);

/// Block output computed from the match predicate alone; the symbols behind
/// the matches never enter.
BlockOutput sparse_block_transition(const SparseBlockKey& key, const HybridParams& params);
BlockOutput sparse_block_transition_edit(const SparseBlockKey& key, const HybridParams& params);

/// Global (symbol-free) sparse LUT for one parameter set.
template <class Rule>
struct SparseLut {
  HybridParams params;
  BlockLut<typename Rule::Word> table;
  OutputCodec<Rule> codec;
};

/// Builds (or fetches from a process-wide cache) the sparse LUT. Cached
/// tables are immutable and shared between threads.
std::shared_ptr<const SparseLut<LcsRule>> build_sparse_lut(const HybridParams& params);
std::shared_ptr<const SparseLut<EditRule>> build_sparse_lut_edit(const HybridParams& params);

/// Number of reachable sparse keys: borders^2 * sum_{c<=K} C(b^2, c).
std::uint64_t sparse_key_count(const HybridParams& params, DpKind kind = DpKind::lcs);

std::int64_t lcs_hybrid(const Sequence& a, const Sequence& b, const HybridParams& params,
                        EngineCounters* counters = nullptr);
std::int64_t lcs_hybrid(const Sequence& a, const Sequence& b, EngineCounters* counters = nullptr);

enum class EngineChoice { tabulated, hybrid, hunt_szymanski };

std::string_view to_string(EngineChoice e) noexcept;

/// hybrid when mn/(log^2 n log log log n) < r < mn log log n / log^2 n,
/// hunt_szymanski below that band, tabulated above it (all constants 1).
EngineChoice recommend_engine(std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t sigma);

}  // namespace subseq
