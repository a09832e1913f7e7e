#include "subseq/tabulation.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "internal/stripe_lut.hpp"
#include "subseq/detail/engines.hpp"

namespace subseq {

namespace {

constexpr std::uint64_t kFlatTableLimit = std::uint64_t{1} << 24;

unsigned diff_bits_of(DpKind kind) noexcept { return kind == DpKind::lcs ? 1U : 2U; }

unsigned word_bits_of(DpKind kind) noexcept {
  return kind == DpKind::lcs ? 8 * sizeof(LcsRule::Word) : 8 * sizeof(EditRule::Word);
}

template <class Rule>
std::int64_t empty_result(std::size_t n, std::size_t m) {
  return static_cast<std::int64_t>(Rule::border_diff) * static_cast<std::int64_t>(std::max(n, m));
}

/// Stripe engine. Rows of the DP grid run along B, columns along A; each full
/// x1 x x2 block is resolved by the current stripe's LUT and ragged edge
/// blocks by the direct recurrence. The only per-column state is one packed
/// top border and one explicit corner value per block.
template <class Rule>
std::int64_t run_stripes(const detail::MatchView& v, const TabulationParams& params, EngineCounters* counters) {
  const std::size_t n = v.a.size();
  const std::size_t m = v.b.size();
  if (n == 0 || m == 0) return empty_result<Rule>(n, m);
  params.validate(Rule::kind);

  AuxMemoryScope scope;
  EngineCounters local;

  const unsigned x1 = params.x1;
  const unsigned x2 = params.x2;
  const std::uint32_t q_max = std::min<std::uint32_t>(params.y, std::max<std::uint32_t>(1, v.alphabet_bound));
  const StripeLayout layout{x1, x2, code_bits_for(q_max), Rule::diff_bits};
  if (layout.key_bits() > params.key_budget_bits) throw std::invalid_argument("tabulation: key exceeds budget");
  const OutputCodec<Rule> codec{x1, x2};

  const std::size_t full_cols = n / x1;
  const unsigned tail_w = static_cast<unsigned>(n % x1);
  const std::size_t ncols = full_cols + (tail_w > 0 ? 1 : 0);
  const std::size_t full_stripes = m / x2;
  const unsigned tail_h = static_cast<unsigned>(m % x2);

  aux_vector<std::uint64_t> top(ncols);
  aux_vector<std::int64_t> corner(ncols + 1);
  aux_vector<std::uint64_t> a_packed(full_cols);
  for (std::size_t k = 0; k < ncols; ++k) {
    top[k] = border_run<Rule>(k < full_cols ? x1 : tail_w);
    corner[k] = static_cast<std::int64_t>(Rule::border_diff) * static_cast<std::int64_t>(k * x1);
  }
  corner[ncols] = static_cast<std::int64_t>(Rule::border_diff) * static_cast<std::int64_t>(n);

  SuperblockCode code(v.alphabet_bound);
  std::array<std::uint32_t, kMaxBlockSide> b_codes{};
  std::array<std::uint32_t, kMaxBlockSide> a_codes{};

  auto direct_block = [&](std::size_t k, unsigned width, std::size_t j0, unsigned height, std::uint64_t left) {
    const std::size_t i0 = k * x1;
    ++local.blocks;
    ++local.ragged_blocks;
    local.ragged_cells += std::uint64_t{width} * height;
    return solve_block<Rule>(width, height, top[k], left,
                             [&](unsigned c, unsigned r) { return v.matches(i0 + c, j0 + r); });
  };

  auto advance_corner = [&](std::size_t k, std::int64_t& prev_old, int delta) {
    const std::int64_t old_next = corner[k + 1];
    corner[k + 1] = prev_old + delta;
    prev_old = old_next;
  };

  for (std::size_t s = 0; s < full_stripes; ++s) {
    const std::size_t j0 = s * x2;
    if (j0 % params.y == 0) {
      // New superblock row: renumber its B segment and re-encode all of A.
      code.assign(v.b.subspan(j0, std::min<std::size_t>(params.y, m - j0)));
      for (std::size_t k = 0; k < full_cols; ++k) {
        for (unsigned c = 0; c < x1; ++c) a_codes[c] = code.code_shifted(v.a[k * x1 + c], v.shift);
        a_packed[k] = layout.pack_codes(std::span(a_codes.data(), x1));
      }
    }
    for (unsigned r = 0; r < x2; ++r) b_codes[r] = code.code(v.b[j0 + r]);

    const auto lut = internal::build_stripe_lut<Rule>(std::span(b_codes.data(), x2), layout);
    ++local.luts_built;
    local.lut_entries += lut.built();
    local.lut_bytes = std::max<std::uint64_t>(local.lut_bytes, lut.bytes());

    std::uint64_t left = border_run<Rule>(x2);
    std::int64_t prev_old = corner[0];
    corner[0] = prev_old + static_cast<std::int64_t>(Rule::border_diff) * x2;
    const unsigned right_shift = codec.bottom_bits();
    const unsigned delta_shift = codec.bottom_bits() + codec.right_bits();
    const std::uint64_t bottom_mask = OutputCodec<Rule>::low_mask(codec.bottom_bits());
    const std::uint64_t right_mask = OutputCodec<Rule>::low_mask(codec.right_bits());
    const int delta_offset = static_cast<int>(Rule::delta_offset(x1, x2));
    for (std::size_t k = 0; k < full_cols; ++k) {
      const std::uint64_t word = lut[layout.key(left, top[k], a_packed[k])];
      top[k] = word & bottom_mask;
      left = (word >> right_shift) & right_mask;
      advance_corner(k, prev_old, static_cast<int>(word >> delta_shift) - delta_offset);
    }
    local.blocks += full_cols;
    local.lut_lookups += full_cols;
    if (tail_w > 0) {
      const BlockOutput out = direct_block(full_cols, tail_w, j0, x2, left);
      top[full_cols] = out.bottom;
      advance_corner(full_cols, prev_old, out.delta);
    }
  }

  if (tail_h > 0) {
    const std::size_t j0 = full_stripes * x2;
    std::uint64_t left = border_run<Rule>(tail_h);
    std::int64_t prev_old = corner[0];
    corner[0] = prev_old + static_cast<std::int64_t>(Rule::border_diff) * tail_h;
    for (std::size_t k = 0; k < ncols; ++k) {
      const BlockOutput out = direct_block(k, k < full_cols ? x1 : tail_w, j0, tail_h, left);
      top[k] = out.bottom;
      left = out.right;
      advance_corner(k, prev_old, out.delta);
    }
  }

  const std::int64_t result = corner[ncols];
  if (counters) {
    local.peak_aux_bytes = scope.peak_bytes();
    *counters = local;
  }
  return result;
}

template <class Rule>
BlockLut<typename Rule::Word> build_public_lut(std::span<const std::uint32_t> b_codes, const TabulationParams& params,
                                               std::uint32_t q_max) {
  params.validate(Rule::kind);
  const StripeLayout layout{params.x1, params.x2, code_bits_for(q_max), Rule::diff_bits};
  if (layout.key_bits() > params.key_budget_bits) throw std::invalid_argument("stripe LUT: key exceeds budget");
  for (std::uint32_t c : b_codes)
    if (c >= q_max) throw std::invalid_argument("stripe LUT: B code outside the superblock alphabet");
  return internal::build_stripe_lut<Rule>(b_codes, layout);
}

}  // namespace

unsigned TabulationParams::key_bound_bits(DpKind kind) const noexcept {
  const unsigned db = diff_bits_of(kind);
  return x1 * (db + static_cast<unsigned>(std::bit_width(y))) + x2 * db;
}

unsigned TabulationParams::value_bound_bits(DpKind kind) const noexcept {
  return kind == DpKind::lcs ? OutputCodec<LcsRule>{x1, x2}.total_bits() : OutputCodec<EditRule>{x1, x2}.total_bits();
}

void TabulationParams::validate(DpKind kind) const {
  if (x1 == 0 || x2 == 0 || y == 0) throw std::invalid_argument("tabulation: x1, x2 and y must be positive");
  if (x1 > kMaxBlockSide || x2 > kMaxBlockSide) throw std::invalid_argument("tabulation: block side too large");
  if (y % x2 != 0) throw std::invalid_argument("tabulation: x2 must divide y");
  if (key_budget_bits > 64) throw std::invalid_argument("tabulation: key budget exceeds the machine word");
  if (key_bound_bits(kind) > key_budget_bits) throw std::invalid_argument("tabulation: key does not fit the budget");
  const unsigned vb = value_bound_bits(kind);
  if (vb > word_bits_of(kind) || (kind == DpKind::lcs && vb > value_bits))
    throw std::invalid_argument("tabulation: packed value does not fit");
}

TabulationParams choose_params(std::uint64_t n, std::uint64_t m, unsigned key_budget_bits, DpKind kind) {
  const unsigned budget = std::min(key_budget_bits, 64U);
  const double big_n = static_cast<double>(std::max<std::uint64_t>({n, m, 1}));

  unsigned cap_x1 = 1;
  unsigned cap_x2 = 1;
  unsigned cap_y = 1;
  if (big_n >= 4.0) {
    const double lg = std::log2(big_n);
    const double lglg = std::log2(lg);
    cap_x1 = static_cast<unsigned>(std::max(1.0, std::floor(lg / (4.0 * lglg))));
    cap_x2 = static_cast<unsigned>(std::max(1.0, std::floor(lg / 4.0)));
    cap_y = static_cast<unsigned>(std::max(1.0, std::floor(lg * lg / 2.0)));
  }
  cap_x1 = std::min(cap_x1, kMaxBlockSide);
  cap_x2 = std::min(cap_x2, kMaxBlockSide);

  TabulationParams best;
  bool found = false;
  for (unsigned x1 = cap_x1; x1 >= 1; --x1) {
    for (unsigned x2 = cap_x2; x2 >= 1; --x2) {
      TabulationParams p;
      p.x1 = x1;
      p.x2 = x2;
      p.key_budget_bits = budget;
      // Largest multiple of x2 not above the cap that still fits the key.
      for (unsigned y = std::max(cap_y / x2, 1U) * x2; y >= x2; y -= x2) {
        p.y = y;
        if (p.key_bound_bits(kind) <= budget) break;
      }
      if (p.key_bound_bits(kind) > budget) continue;
      if (p.value_bound_bits(kind) > (kind == DpKind::lcs ? p.value_bits : word_bits_of(kind))) continue;
      const auto score = [](const TabulationParams& t) { return std::tuple(t.x1 * t.x2, t.y, t.x2); };
      if (!found || score(p) > score(best)) {
        best = p;
        found = true;
      }
    }
  }
  if (!found) throw std::invalid_argument("choose_params: key budget too small for 1x1 blocks");
  return best;
}

SuperblockCode::SuperblockCode(std::uint64_t alphabet_bound) {
  if (alphabet_bound > 0 && alphabet_bound <= kFlatTableLimit) table_.assign(alphabet_bound, kAbsent);
}

void SuperblockCode::assign(std::span<const Symbol> segment) {
  if (!table_.empty())
    for (Symbol s : sorted_) table_[s] = kAbsent;
  sorted_.assign(segment.begin(), segment.end());
  std::sort(sorted_.begin(), sorted_.end());
  sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
  if (!table_.empty()) {
    if (!sorted_.empty() && sorted_.back() >= table_.size()) {
      table_.clear();  // segment outside the declared bound: search instead
      return;
    }
    for (std::uint32_t c = 0; c < sorted_.size(); ++c) table_[sorted_[c]] = c;
  }
}

std::uint32_t SuperblockCode::code_by_search(Symbol s) const noexcept {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), s);
  if (it == sorted_.end() || *it != s) return q();
  return static_cast<std::uint32_t>(it - sorted_.begin());
}

SuperblockCode build_superblock_code(const Sequence& b_segment) {
  SuperblockCode code(b_segment.alphabet_bound());
  code.assign(b_segment.symbols());
  return code;
}

std::vector<std::uint32_t> remap_a_snippet(const Sequence& a_segment, const SuperblockCode& code) {
  std::vector<std::uint32_t> out;
  out.reserve(a_segment.size());
  for (Symbol s : a_segment) out.push_back(code.code(s));
  return out;
}

unsigned code_bits_for(std::uint32_t q_max) noexcept { return static_cast<unsigned>(std::bit_width(q_max)); }

BlockLut<LcsRule::Word> build_stripe_lut(std::span<const std::uint32_t> b_block_codes, const TabulationParams& params,
                                         std::uint32_t q_max) {
  return build_public_lut<LcsRule>(b_block_codes, params, q_max);
}

BlockLut<EditRule::Word> build_edit_stripe_lut(std::span<const std::uint32_t> b_block_codes,
                                               const TabulationParams& params, std::uint32_t q_max) {
  return build_public_lut<EditRule>(b_block_codes, params, q_max);
}

std::int64_t lcs_tabulated(const Sequence& a, const Sequence& b, const TabulationParams& params,
                           EngineCounters* counters) {
  const auto norm = normalize_alphabet(a, b);
  const detail::MatchView view{norm.a.symbols(), norm.b.symbols(), norm.sigma, 0};
  return detail::tabulated_lcs(view, params, counters);
}

std::int64_t lcs_tabulated(const Sequence& a, const Sequence& b, EngineCounters* counters) {
  return lcs_tabulated(a, b, choose_params(a.size(), b.size()), counters);
}

namespace detail {

std::int64_t tabulated_lcs(const MatchView& v, const TabulationParams& params, EngineCounters* counters) {
  return run_stripes<LcsRule>(v, params, counters);
}

std::int64_t tabulated_edit(const MatchView& v, const TabulationParams& params, EngineCounters* counters) {
  return run_stripes<EditRule>(v, params, counters);
}

std::int64_t naive_lcs(const MatchView& v) {
  const std::size_t m = v.b.size();
  std::vector<std::int32_t> row(m + 1, 0);
  for (std::size_t i = 0; i < v.a.size(); ++i) {
    std::int32_t diag = 0;
    const std::int64_t want = static_cast<std::int64_t>(v.a[i]) + v.shift;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int32_t up = row[j];
      row[j] = want == static_cast<std::int64_t>(v.b[j - 1]) ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row[m];
}

}  // namespace detail

}  // namespace subseq
