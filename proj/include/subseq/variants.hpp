#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "subseq/counters.hpp"
#include "subseq/sequence.hpp"
#include "subseq/sparse_hybrid.hpp"
#include "subseq/tabulation.hpp"

namespace subseq {

// ---- Edit distance -------------------------------------------------------

std::int64_t edit_distance_tabulated(const Sequence& a, const Sequence& b, const TabulationParams& params,
                                     EngineCounters* counters = nullptr);
std::int64_t edit_distance_tabulated(const Sequence& a, const Sequence& b, EngineCounters* counters = nullptr);

std::int64_t edit_distance_hybrid(const Sequence& a, const Sequence& b, const HybridParams& params,
                                  EngineCounters* counters = nullptr);
std::int64_t edit_distance_hybrid(const Sequence& a, const Sequence& b, EngineCounters* counters = nullptr);

// ---- Transposition-invariant LCS -----------------------------------------

enum class LctsMode { automatic, all_tabulated, all_naive };
enum class TranspositionRoute { tabulated, hybrid };

/// Match counts per shift t = b_j - a_i over t in [-(sigma-1), sigma-1].
struct TranspositionPlan {
  std::uint32_t sigma = 0;
  std::vector<std::uint64_t> counts;  ///< counts[t + sigma - 1]
  double threshold = 0.0;             ///< shifts with r_t >= threshold are dense

  [[nodiscard]] std::int64_t min_shift() const noexcept { return -static_cast<std::int64_t>(sigma) + 1; }
  [[nodiscard]] std::int64_t max_shift() const noexcept { return static_cast<std::int64_t>(sigma) - 1; }
  [[nodiscard]] std::uint64_t r(std::int64_t t) const;
  [[nodiscard]] TranspositionRoute route(std::int64_t t) const { return r(t) >= threshold ? TranspositionRoute::tabulated : TranspositionRoute::hybrid; }
  [[nodiscard]] std::uint64_t total() const noexcept;
};

/// Default dense threshold: mn log log n / sigma.
double default_lcts_threshold(std::uint64_t n, std::uint64_t m, std::uint32_t sigma);

/// Histogram convolution, O(n + m + sigma^2). Symbols must be below sigma.
TranspositionPlan plan_transpositions(const Sequence& a, const Sequence& b, std::uint32_t sigma);

struct LctsOptions {
  LctsMode mode = LctsMode::automatic;
  unsigned threads = 1;
  unsigned key_budget_bits = kDefaultKeyBudget;
  std::optional<double> threshold;  ///< overrides default_lcts_threshold
  bool prune = true;                ///< skip shifts with r_t no larger than the best found
};

struct LctsReport {
  std::int64_t result = 0;
  std::int64_t best_shift = 0;
  std::uint64_t shifts_evaluated = 0;
  std::uint64_t shifts_pruned = 0;
  std::uint64_t tabulated_runs = 0;
  std::uint64_t hybrid_runs = 0;
  std::uint64_t naive_runs = 0;
  EngineCounters counters;
};

LctsReport lcts_run(const Sequence& a, const Sequence& b, std::uint32_t sigma, const LctsOptions& options = {});
std::int64_t lcts(const Sequence& a, const Sequence& b, std::uint32_t sigma, LctsMode mode = LctsMode::automatic);

/// max over t of lcs_naive with the shifted predicate; the reference for tests.
std::int64_t lcts_reference(const Sequence& a, const Sequence& b, std::uint32_t sigma);

// ---- MerLCS on b x b x b cubes -------------------------------------------

inline constexpr unsigned kMerlcsKeyBudget = 64;

/// Bits of a cube key: two b-cell edges, three b x b walls of 1-bit
/// differences, and b P-codes of bit_width(2b) bits.
unsigned cube_key_bits(unsigned b) noexcept;
/// Bits of a cube value: three b x b output walls.
unsigned cube_value_bits(unsigned b) noexcept;

/// Cube transitions for one column, where the A and B blocks are fixed and
/// the key carries the input walls and the P-codes of the cube's layer.
/// Key, low to high:
///   edge_j  : L(0,dj,0) - L(0,dj-1,0),   dj = 1..b
///   edge_i  : L(di,0,0) - L(di-1,0,0),   di = 1..b
///   wall_k  : L(di,dj,0) - L(di-1,dj,0), di-major
///   wall_i  : L(0,dj,dk) - L(0,dj,dk-1), dj-major
///   wall_j  : L(di,0,dk) - L(di,0,dk-1), di-major
///   P codes : one per layer dk
/// Value: L(b,dj,dk) - L(b,dj,dk-1), L(di,b,dk) - L(di,b,dk-1) and
/// L(di,dj,b) - L(di-1,dj,b), each b x b and ordered like the input walls.
class CubeLut {
 public:
  /// a_codes / b_codes are the column's A and B blocks, already coded.
  CubeLut(unsigned b, std::vector<std::uint32_t> a_codes, std::vector<std::uint32_t> b_codes, std::uint32_t sentinel);

  [[nodiscard]] unsigned b() const noexcept { return b_; }
  [[nodiscard]] unsigned key_bits() const noexcept { return cube_key_bits(b_); }
  [[nodiscard]] unsigned code_bits() const noexcept;

  /// Memoized lookup.
  std::uint64_t operator()(std::uint64_t key);
  /// Uncached evaluation of one key.
  [[nodiscard]] std::uint64_t compute(std::uint64_t key) const;
  /// Materializes every key whose P-codes are at most the sentinel.
  void fill_all();

  [[nodiscard]] std::size_t entries() const noexcept { return memo_.size(); }
  [[nodiscard]] std::uint64_t hits() const noexcept { return hits_; }

 private:
  unsigned b_;
  std::vector<std::uint32_t> a_codes_;
  std::vector<std::uint32_t> b_codes_;
  std::uint32_t sentinel_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
  std::uint64_t hits_ = 0;
};

struct MerlcsOptions {
  unsigned cube_b = 2;
  unsigned key_budget_bits = kMerlcsKeyBudget;
};

struct MerlcsCounters {
  std::uint64_t columns = 0;
  std::uint64_t cubes = 0;          ///< full cubes resolved through a column LUT
  std::uint64_t ragged_cubes = 0;   ///< partial cubes on an edge, solved directly
  std::uint64_t lut_entries = 0;    ///< distinct keys evaluated across all columns
  std::uint64_t lut_hits = 0;
  std::int64_t peak_aux_bytes = 0;
};

/// Throws std::invalid_argument if cube_b is 0 or its key exceeds the budget.
std::int64_t merlcs_tabulated(const Sequence& a, const Sequence& b, const Sequence& p, const MerlcsOptions& options = {},
                              MerlcsCounters* counters = nullptr);

}  // namespace subseq
