#include "subseq/sparse_hybrid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "internal/stripe_lut.hpp"
#include "subseq/detail/engines.hpp"

namespace subseq {

namespace {

unsigned diff_bits_of(DpKind kind) noexcept { return kind == DpKind::lcs ? 1U : 2U; }

unsigned value_bits_of(const HybridParams& p, DpKind kind) noexcept {
  return kind == DpKind::lcs ? OutputCodec<LcsRule>{p.b, p.b}.total_bits() : OutputCodec<EditRule>{p.b, p.b}.total_bits();
}

unsigned word_bits_of(DpKind kind) noexcept {
  return kind == DpKind::lcs ? 8 * sizeof(LcsRule::Word) : 8 * sizeof(EditRule::Word);
}

unsigned effective_k(const HybridParams& p) noexcept { return std::min(p.k, p.b * p.b); }

/// Matches of one stripe, bucketed by block and sorted row-major inside each.
struct StripeMatches {
  aux_vector<std::uint32_t> offsets;  // ncols + 1
  aux_vector<std::uint32_t> cells;    // local row * b + local col
};

/// Positions of A grouped by the symbol they must meet in B.
class Occurrences {
 public:
  Occurrences(std::span<const Symbol> a, std::uint32_t bound) : start_(std::size_t{bound} + 1, 0), pos_(a.size()) {
    for (Symbol s : a) ++start_[s + 1];
    for (std::uint32_t c = 0; c < bound; ++c) start_[c + 1] += start_[c];
    aux_vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::uint32_t i = 0; i < a.size(); ++i) pos_[fill[a[i]]++] = i;
  }

  /// Positions i with a[i] + shift == target.
  [[nodiscard]] std::span<const std::uint32_t> meeting(Symbol target, std::int64_t shift) const noexcept {
    const std::int64_t want = static_cast<std::int64_t>(target) - shift;
    if (want < 0 || want + 1 >= static_cast<std::int64_t>(start_.size())) return {};
    const auto w = static_cast<std::size_t>(want);
    return std::span(pos_).subspan(start_[w], start_[w + 1] - start_[w]);
  }

 private:
  aux_vector<std::uint32_t> start_;
  aux_vector<std::uint32_t> pos_;
};

void collect_stripe(const detail::MatchView& v, const Occurrences& occ, std::size_t j0, unsigned height, unsigned b,
                    std::size_t ncols, StripeMatches& out) {
  out.offsets.assign(ncols + 1, 0);
  for (unsigned r = 0; r < height; ++r)
    for (std::uint32_t i : occ.meeting(v.b[j0 + r], v.shift)) ++out.offsets[i / b + 1];
  for (std::size_t k = 0; k < ncols; ++k) out.offsets[k + 1] += out.offsets[k];
  out.cells.resize(out.offsets[ncols]);
  aux_vector<std::uint32_t> fill(out.offsets.begin(), out.offsets.end() - 1);
  for (unsigned r = 0; r < height; ++r)
    for (std::uint32_t i : occ.meeting(v.b[j0 + r], v.shift)) out.cells[fill[i / b]++] = r * b + i % b;
}

template <class Rule>
std::uint64_t pack_sparse(std::uint64_t top, std::uint64_t left, std::span<const std::uint32_t> cells,
                          const HybridParams& p) {
  const unsigned border = p.b * Rule::diff_bits;
  const unsigned coord_base = 2 * border + p.count_bits();
  std::uint64_t key = left | (top << border) | (std::uint64_t{cells.size()} << (2 * border));
  for (std::size_t c = 0; c < cells.size(); ++c) key |= std::uint64_t{cells[c]} << (coord_base + c * p.coord_bits());
  return key;
}

template <class Rule>
BlockOutput transition(const SparseBlockKey& key, const HybridParams& p) {
  p.validate(Rule::kind);
  if (key.cells.size() > effective_k(p)) throw std::invalid_argument("sparse key: more matches than K");
  for (std::size_t c = 0; c < key.cells.size(); ++c) {
    if (key.cells[c] >= p.b * p.b) throw std::invalid_argument("sparse key: cell outside the block");
    if (c > 0 && key.cells[c] <= key.cells[c - 1]) throw std::invalid_argument("sparse key: cells not ascending");
  }
  std::array<bool, kMaxBlockSide * kMaxBlockSide> grid{};
  for (std::uint32_t cell : key.cells) grid[cell] = true;
  return solve_block<Rule>(p.b, p.b, key.top, key.left, [&](unsigned c, unsigned r) { return grid[r * p.b + c]; });
}

template <class Rule>
std::shared_ptr<const SparseLut<Rule>> make_sparse_lut(const HybridParams& p) {
  p.validate(Rule::kind);
  const unsigned key_bits = p.key_bits(Rule::kind);
  if (key_bits > kMaxMaterializedKeyBits) throw std::invalid_argument("sparse LUT: key too wide to materialize");

  auto lut = std::make_shared<SparseLut<Rule>>(SparseLut<Rule>{p, BlockLut<typename Rule::Word>(key_bits), {p.b, p.b}});
  const unsigned cells_total = p.b * p.b;
  const unsigned kmax = effective_k(p);
  const std::uint64_t border_space = std::uint64_t{1} << (p.b * Rule::diff_bits);

  std::array<bool, kMaxBlockSide * kMaxBlockSide> grid{};
  std::vector<std::uint32_t> cells;
  // Visits every ascending cell list of length `count` by recursion on the next slot.
  auto emit = [&](auto&& self, unsigned first, unsigned count) -> void {
    if (cells.size() == count) {
      for (std::uint64_t top = 0; top < border_space; ++top) {
        if (!valid_run<Rule>(top, p.b)) continue;
        for (std::uint64_t left = 0; left < border_space; ++left) {
          if (!valid_run<Rule>(left, p.b)) continue;
          const BlockOutput out =
              solve_block<Rule>(p.b, p.b, top, left, [&](unsigned c, unsigned r) { return grid[r * p.b + c]; });
          lut->table.set(pack_sparse<Rule>(top, left, cells, p), lut->codec.pack(out));
        }
      }
      return;
    }
    for (unsigned cell = first; cell + (count - cells.size()) <= cells_total; ++cell) {
      cells.push_back(cell);
      grid[cell] = true;
      self(self, cell + 1, count);
      grid[cell] = false;
      cells.pop_back();
    }
  };
  for (unsigned count = 0; count <= kmax; ++count) emit(emit, 0, count);
  return lut;
}

template <class Rule>
std::shared_ptr<const SparseLut<Rule>> cached_sparse_lut(const HybridParams& p) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const SparseLut<Rule>>> cache;
  p.validate(Rule::kind);
  const std::pair key{p.b, effective_k(p)};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto lut = make_sparse_lut<Rule>(p);
  cache.emplace(key, lut);
  return lut;
}

/// Stripe LUTs for dense blocks: sub-blocks of at most x1 x x2 inside a b x b
/// block, with A remapped against the symbols of the current hybrid stripe.
template <class Rule>
class DenseSolver {
 public:
  DenseSolver(const detail::MatchView& v, const HybridParams& p, std::size_t n, std::size_t m) : v_(v), b_(p.b) {
    TabulationParams sub = choose_params(n, m, std::min(p.key_budget_bits, kMaxMaterializedKeyBits), Rule::kind);
    x1_ = std::min(sub.x1, b_);
    x2_ = std::min(sub.x2, b_);
    const std::uint32_t q_max = std::min<std::uint32_t>(b_, std::max<std::uint32_t>(1, v.alphabet_bound));
    const unsigned budget = std::min(p.key_budget_bits, kMaxMaterializedKeyBits);
    auto layout = [&] { return StripeLayout{x1_, x2_, code_bits_for(q_max), Rule::diff_bits}; };
    while (layout().key_bits() > budget && (x1_ > 1 || x2_ > 1)) {
      if (x1_ >= x2_ && x1_ > 1) --x1_;
      else --x2_;
    }
    layout_ = layout();
    usable_ = layout_.key_bits() <= budget;
  }

  void start_stripe(std::size_t j0, unsigned height) {
    j0_ = j0;
    height_ = height;
    code_.assign(v_.b.subspan(j0, height));
    luts_.clear();
  }

  [[nodiscard]] unsigned sub_luts_built() const noexcept { return built_; }
  [[nodiscard]] std::uint64_t sub_lookups() const noexcept { return lookups_; }
  [[nodiscard]] std::uint64_t largest_lut_bytes() const noexcept { return largest_bytes_; }

  BlockOutput solve(std::size_t i0, std::uint64_t top, std::uint64_t left) {
    if (!usable_) return direct(i0, b_, 0, b_, top, left);
    if (luts_.empty()) luts_.resize(b_ / x2_);

    const unsigned sub_cols = b_ / x1_;
    const unsigned tail_w = b_ % x1_;
    std::array<std::uint64_t, kMaxBlockSide> a_packed{};
    std::array<std::uint32_t, kMaxBlockSide> codes{};
    for (unsigned sc = 0; sc < sub_cols; ++sc) {
      for (unsigned c = 0; c < x1_; ++c) codes[c] = code_.code_shifted(v_.a[i0 + sc * x1_ + c], v_.shift);
      a_packed[sc] = layout_.pack_codes(std::span(codes.data(), x1_));
    }

    const unsigned db = Rule::diff_bits;
    const OutputCodec<Rule> codec{x1_, x2_};
    std::uint64_t right = 0;
    for (unsigned r0 = 0; r0 < b_; r0 += x2_) {
      const unsigned h = std::min(x2_, b_ - r0);
      std::uint64_t sub_left = (left >> (r0 * db)) & OutputCodec<Rule>::low_mask(h * db);
      std::uint64_t new_top = 0;
      for (unsigned sc = 0; sc <= sub_cols; ++sc) {
        const unsigned w = sc < sub_cols ? x1_ : tail_w;
        if (w == 0) break;
        const unsigned c0 = sc * x1_;
        const std::uint64_t sub_top = (top >> (c0 * db)) & OutputCodec<Rule>::low_mask(w * db);
        BlockOutput out;
        if (w == x1_ && h == x2_) {
          const auto& lut = stripe_lut(r0 / x2_);
          out = codec.unpack(lut[layout_.key(sub_left, sub_top, a_packed[sc])]);
          ++lookups_;
        } else {
          out = direct(i0 + c0, w, r0, h, sub_top, sub_left);
        }
        new_top |= out.bottom << (c0 * db);
        sub_left = out.right;
      }
      top = new_top;
      right |= sub_left << (r0 * db);
    }
    BlockOutput out;
    out.bottom = top;
    out.right = right;
    out.delta = sum_diffs<Rule>(left, b_) + sum_diffs<Rule>(top, b_);
    return out;
  }

 private:
  BlockOutput direct(std::size_t i0, unsigned w, unsigned r0, unsigned h, std::uint64_t top, std::uint64_t left) const {
    const std::size_t j0 = j0_ + r0;
    return solve_block<Rule>(w, h, top, left, [&](unsigned c, unsigned r) { return v_.matches(i0 + c, j0 + r); });
  }

  const BlockLut<typename Rule::Word>& stripe_lut(unsigned sub_row) {
    auto& slot = luts_[sub_row];
    if (!slot) {
      std::array<std::uint32_t, kMaxBlockSide> b_codes{};
      for (unsigned r = 0; r < x2_; ++r) b_codes[r] = code_.code(v_.b[j0_ + sub_row * x2_ + r]);
      slot.emplace(internal::build_stripe_lut<Rule>(std::span(b_codes.data(), x2_), layout_));
      ++built_;
      std::uint64_t live = 0;
      for (const auto& l : luts_)
        if (l) live += l->bytes();
      largest_bytes_ = std::max(largest_bytes_, live);
    }
    return *slot;
  }

  const detail::MatchView& v_;
  unsigned b_;
  unsigned x1_ = 1;
  unsigned x2_ = 1;
  StripeLayout layout_;
  bool usable_ = false;
  SuperblockCode code_{v_.alphabet_bound};
  std::size_t j0_ = 0;
  unsigned height_ = 0;
  std::vector<std::optional<BlockLut<typename Rule::Word>>> luts_;
  unsigned built_ = 0;
  std::uint64_t lookups_ = 0;
  std::uint64_t largest_bytes_ = 0;
};

template <class Rule>
std::int64_t run_hybrid(const detail::MatchView& v, const HybridParams& params, EngineCounters* counters) {
  const std::size_t n = v.a.size();
  const std::size_t m = v.b.size();
  if (n == 0 || m == 0) {
    if (counters) *counters = EngineCounters{};
    return static_cast<std::int64_t>(Rule::border_diff) * static_cast<std::int64_t>(std::max(n, m));
  }
  params.validate(Rule::kind);
  const auto sparse = cached_sparse_lut<Rule>(params);

  AuxMemoryScope scope;
  EngineCounters local;
  local.lut_entries = sparse->table.built();
  local.lut_bytes = sparse->table.bytes();

  const unsigned b = params.b;
  const unsigned kmax = effective_k(params);
  const std::size_t full_cols = n / b;
  const unsigned tail_w = static_cast<unsigned>(n % b);
  const std::size_t ncols = full_cols + (tail_w > 0 ? 1 : 0);
  const std::size_t nstripes = (m + b - 1) / b;

  const Occurrences occ(v.a, v.alphabet_bound);
  StripeMatches sm;
  std::optional<DenseSolver<Rule>> dense;
  if (params.dense_strategy == DenseStrategy::tabulated) dense.emplace(v, params, n, m);

  aux_vector<std::uint64_t> top(ncols);
  aux_vector<std::int64_t> corner(ncols + 1);
  for (std::size_t k = 0; k < ncols; ++k) {
    top[k] = border_run<Rule>(k < full_cols ? b : tail_w);
    corner[k] = static_cast<std::int64_t>(Rule::border_diff) * static_cast<std::int64_t>(k * b);
  }
  corner[ncols] = static_cast<std::int64_t>(Rule::border_diff) * static_cast<std::int64_t>(n);

  const OutputCodec<Rule>& codec = sparse->codec;
  std::uint64_t dense_any = 0;
  bool dense_stripe_started = false;

  for (std::size_t s = 0; s < nstripes; ++s) {
    const std::size_t j0 = s * b;
    const unsigned h = static_cast<unsigned>(std::min<std::size_t>(b, m - j0));
    collect_stripe(v, occ, j0, h, b, ncols, sm);
    local.matches += sm.cells.size();
    dense_stripe_started = false;

    std::uint64_t left = border_run<Rule>(h);
    std::int64_t prev_old = corner[0];
    corner[0] = prev_old + static_cast<std::int64_t>(Rule::border_diff) * h;
    for (std::size_t k = 0; k < ncols; ++k) {
      const unsigned w = k < full_cols ? b : tail_w;
      const std::span<const std::uint32_t> cells(sm.cells.data() + sm.offsets[k], sm.offsets[k + 1] - sm.offsets[k]);
      const bool is_dense = cells.size() > kmax;
      if (is_dense) ++dense_any;
      BlockOutput out;
      if (w == b && h == b) {
        if (!is_dense) {
          out = codec.unpack(sparse->table[pack_sparse<Rule>(top[k], left, cells, params)]);
          ++local.sparse_lookups;
        } else {
          ++local.dense_blocks;
          if (dense) {
            if (!dense_stripe_started) {
              dense->start_stripe(j0, h);
              dense_stripe_started = true;
            }
            out = dense->solve(k * b, top[k], left);
          } else {
            const std::size_t i0 = k * b;
            out = solve_block<Rule>(b, b, top[k], left, [&](unsigned c, unsigned r) { return v.matches(i0 + c, j0 + r); });
          }
        }
      } else {
        const std::size_t i0 = k * b;
        out = solve_block<Rule>(w, h, top[k], left, [&](unsigned c, unsigned r) { return v.matches(i0 + c, j0 + r); });
        ++local.ragged_blocks;
        local.ragged_cells += std::uint64_t{w} * h;
      }
      ++local.blocks;
      top[k] = out.bottom;
      left = out.right;
      const std::int64_t old_next = corner[k + 1];
      corner[k + 1] = prev_old + out.delta;
      prev_old = old_next;
    }
  }

  const std::int64_t result = corner[ncols];
  if (counters) {
    if (dense) {
      local.luts_built = dense->sub_luts_built();
      local.lut_lookups = dense->sub_lookups();
    }
    local.f_d = static_cast<double>(dense_any) / static_cast<double>(ncols * nstripes);
    local.peak_aux_bytes = scope.peak_bytes();
    *counters = local;
  }
  return result;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

unsigned HybridParams::coord_bits() const noexcept { return static_cast<unsigned>(std::bit_width(b * b - 1)); }

unsigned HybridParams::count_bits() const noexcept {
  return static_cast<unsigned>(std::bit_width(std::min(k, b * b)));
}

unsigned HybridParams::key_bits(DpKind kind) const noexcept {
  return 2 * b * diff_bits_of(kind) + count_bits() + std::min(k, b * b) * coord_bits();
}

void HybridParams::validate(DpKind kind) const {
  if (b == 0 || k == 0) throw std::invalid_argument("hybrid: b and K must be positive");
  if (b > kMaxBlockSide) throw std::invalid_argument("hybrid: block side too large");
  if (key_budget_bits > 64) throw std::invalid_argument("hybrid: key budget exceeds the machine word");
  if (key_bits(kind) > key_budget_bits) throw std::invalid_argument("hybrid: sparse key does not fit the budget");
  if (value_bits_of(*this, kind) > word_bits_of(kind)) throw std::invalid_argument("hybrid: packed value does not fit");
}

HybridParams choose_hybrid_params(std::uint64_t n, std::uint64_t m, unsigned key_budget_bits, DpKind kind) {
  const double big_n = static_cast<double>(std::max<std::uint64_t>({n, m, 1}));
  HybridParams p;
  p.key_budget_bits = std::min(key_budget_bits, 64U);
  p.k = 1;
  if (big_n >= 4.0) {
    const double lg = std::log2(big_n);
    p.k = static_cast<unsigned>(std::max(1.0, std::floor(lg / std::log2(lg))));
  }
  const unsigned fit = std::min(p.key_budget_bits, kMaxMaterializedKeyBits);
  bool found = false;
  for (unsigned b = kMaxBlockSide; b >= 1; --b) {
    p.b = b;
    if (p.key_bits(kind) <= fit && value_bits_of(p, kind) <= word_bits_of(kind)) {
      found = true;
      break;
    }
  }
  if (!found) throw std::invalid_argument("choose_hybrid_params: key budget too small for 1x1 blocks");
  return p;
}

std::uint64_t SparseBlockKey::pack(const HybridParams& params, DpKind kind) const {
  if (cells.size() > effective_k(params)) throw std::invalid_argument("sparse key: more matches than K");
  return kind == DpKind::lcs ? pack_sparse<LcsRule>(top, left, cells, params)
                             : pack_sparse<EditRule>(top, left, cells, params);
}

SparseBlockKey SparseBlockKey::unpack(std::uint64_t key, const HybridParams& params, DpKind kind) {
  const unsigned border = params.b * diff_bits_of(kind);
  const std::uint64_t border_mask = OutputCodec<LcsRule>::low_mask(border);
  SparseBlockKey out;
  out.left = key & border_mask;
  out.top = (key >> border) & border_mask;
  const auto count =
      static_cast<unsigned>((key >> (2 * border)) & OutputCodec<LcsRule>::low_mask(params.count_bits()));
  const unsigned base = 2 * border + params.count_bits();
  const std::uint64_t coord_mask = OutputCodec<LcsRule>::low_mask(params.coord_bits());
  for (unsigned c = 0; c < count; ++c)
    out.cells.push_back(static_cast<std::uint32_t>((key >> (base + c * params.coord_bits())) & coord_mask));
  return out;
}

BlockCensus classify_blocks(const MatchIndex& matches, const HybridParams& params) {
  BlockCensus census;
  const std::size_t total = matches.block_count();
  census.counts.resize(total);
  census.dense.resize(total);
  for (std::size_t f = 0; f < total; ++f) {
    census.counts[f] = static_cast<std::uint32_t>(matches.block(f).size());
    census.dense[f] = census.counts[f] > params.k;
    census.dense_blocks += census.dense[f] ? 1 : 0;
  }
  census.f_d = total == 0 ? 0.0 : static_cast<double>(census.dense_blocks) / static_cast<double>(total);
  return census;
}

BlockOutput sparse_block_transition(const SparseBlockKey& key, const HybridParams& params) {
  return transition<LcsRule>(key, params);
}

BlockOutput sparse_block_transition_edit(const SparseBlockKey& key, const HybridParams& params) {
  return transition<EditRule>(key, params);
}

std::shared_ptr<const SparseLut<LcsRule>> build_sparse_lut(const HybridParams& params) {
  return cached_sparse_lut<LcsRule>(params);
}

std::shared_ptr<const SparseLut<EditRule>> build_sparse_lut_edit(const HybridParams& params) {
  return cached_sparse_lut<EditRule>(params);
}

std::uint64_t sparse_key_count(const HybridParams& params, DpKind kind) {
  const std::uint64_t per_border = kind == DpKind::lcs ? (std::uint64_t{1} << params.b) : [&] {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < params.b; ++i) v *= 3;
    return v;
  }();
  std::uint64_t sets = 0;
  for (unsigned c = 0; c <= effective_k(params); ++c) sets += binomial(params.b * params.b, c);
  return per_border * per_border * sets;
}

std::int64_t lcs_hybrid(const Sequence& a, const Sequence& b, const HybridParams& params, EngineCounters* counters) {
  const auto norm = normalize_alphabet(a, b);
  const detail::MatchView view{norm.a.symbols(), norm.b.symbols(), norm.sigma, 0};
  return detail::hybrid_lcs(view, params, counters);
}

std::int64_t lcs_hybrid(const Sequence& a, const Sequence& b, EngineCounters* counters) {
  return lcs_hybrid(a, b, choose_hybrid_params(a.size(), b.size()), counters);
}

std::string_view to_string(EngineChoice e) noexcept {
  switch (e) {
    case EngineChoice::tabulated: return "tabulated";
    case EngineChoice::hybrid: return "hybrid";
    case EngineChoice::hunt_szymanski: return "hs";
  }
  return "tabulated";
}

EngineChoice recommend_engine(std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t sigma) {
  (void)sigma;
  const double big_n = static_cast<double>(std::max<std::uint64_t>({n, m, 1}));
  const double lg = std::max(2.0, std::log2(big_n));
  const double lglg = std::max(1.0, std::log2(lg));
  const double lglglg = std::max(1.0, std::log2(lglg));
  const double mn = static_cast<double>(n) * static_cast<double>(m);
  const double lower = mn / (lg * lg * lglglg);
  const double upper = mn * lglg / (lg * lg);
  const auto rr = static_cast<double>(r);
  if (rr <= lower) return EngineChoice::hunt_szymanski;
  if (rr < upper) return EngineChoice::hybrid;
  return EngineChoice::tabulated;
}

namespace detail {

std::int64_t hybrid_lcs(const MatchView& v, const HybridParams& params, EngineCounters* counters) {
  return run_hybrid<LcsRule>(v, params, counters);
}

std::int64_t hybrid_edit(const MatchView& v, const HybridParams& params, EngineCounters* counters) {
  return run_hybrid<EditRule>(v, params, counters);
}

}  // namespace detail

}  // namespace subseq
