#include "subseq/variants.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "subseq/dp_reference.hpp"
#include "subseq/detail/engines.hpp"

namespace subseq {

namespace {

detail::MatchView view_of(const NormalizedPair& norm) {
  return {norm.a.symbols(), norm.b.symbols(), std::max<std::uint32_t>(1, norm.sigma), 0};
}

void check_alphabet(const Sequence& s, std::uint32_t sigma) {
  if (s.alphabet_bound() > sigma) throw std::invalid_argument("lcts: symbol outside [0, sigma)");
}

}  // namespace

// ---- Edit distance -------------------------------------------------------

std::int64_t edit_distance_tabulated(const Sequence& a, const Sequence& b, const TabulationParams& params,
                                     EngineCounters* counters) {
  const auto norm = normalize_alphabet(a, b);
  return detail::tabulated_edit(view_of(norm), params, counters);
}

std::int64_t edit_distance_tabulated(const Sequence& a, const Sequence& b, EngineCounters* counters) {
  return edit_distance_tabulated(a, b, choose_params(a.size(), b.size(), kDefaultKeyBudget, DpKind::edit), counters);
}

std::int64_t edit_distance_hybrid(const Sequence& a, const Sequence& b, const HybridParams& params,
                                  EngineCounters* counters) {
  const auto norm = normalize_alphabet(a, b);
  return detail::hybrid_edit(view_of(norm), params, counters);
}

std::int64_t edit_distance_hybrid(const Sequence& a, const Sequence& b, EngineCounters* counters) {
  return edit_distance_hybrid(a, b, choose_hybrid_params(a.size(), b.size(), kDefaultKeyBudget, DpKind::edit),
                              counters);
}

// ---- Transposition-invariant LCS -----------------------------------------

std::uint64_t TranspositionPlan::r(std::int64_t t) const {
  if (t < min_shift() || t > max_shift()) return 0;
  return counts[static_cast<std::size_t>(t - min_shift())];
}

std::uint64_t TranspositionPlan::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

double default_lcts_threshold(std::uint64_t n, std::uint64_t m, std::uint32_t sigma) {
  const double big_n = static_cast<double>(std::max<std::uint64_t>({n, m, 2}));
  const double lglg = std::log2(std::max(std::log2(big_n), 1.0));
  return static_cast<double>(n) * static_cast<double>(m) * lglg / std::max<double>(sigma, 1.0);
}

TranspositionPlan plan_transpositions(const Sequence& a, const Sequence& b, std::uint32_t sigma) {
  check_alphabet(a, sigma);
  check_alphabet(b, sigma);
  TranspositionPlan plan;
  plan.sigma = sigma;
  plan.counts.assign(sigma == 0 ? 0 : 2 * std::size_t{sigma} - 1, 0);
  plan.threshold = default_lcts_threshold(a.size(), b.size(), sigma);
  if (sigma == 0) return plan;

  std::vector<std::uint64_t> ha(sigma, 0);
  std::vector<std::uint64_t> hb(sigma, 0);
  std::vector<std::uint32_t> present_a;
  std::vector<std::uint32_t> present_b;
  for (Symbol s : a)
    if (ha[s]++ == 0) present_a.push_back(s);
  for (Symbol s : b)
    if (hb[s]++ == 0) present_b.push_back(s);
  // Only symbols that occur contribute, so the cost is distinct(A) * distinct(B).
  for (std::uint32_t x : present_a)
    for (std::uint32_t y : present_b)
      plan.counts[std::size_t{y} + sigma - 1 - x] += ha[x] * hb[y];
  return plan;
}

LctsReport lcts_run(const Sequence& a, const Sequence& b, std::uint32_t sigma, const LctsOptions& options) {
  TranspositionPlan plan = plan_transpositions(a, b, sigma);
  if (options.threshold) plan.threshold = *options.threshold;

  LctsReport report;
  if (a.empty() || b.empty()) return report;

  // Most promising shifts first, so the pruning bound tightens early.
  std::vector<std::int64_t> order;
  for (std::int64_t t = plan.min_shift(); t <= plan.max_shift(); ++t)
    if (plan.r(t) > 0) order.push_back(t);
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) { return plan.r(x) > plan.r(y); });

  const std::int64_t cap = static_cast<std::int64_t>(std::min(a.size(), b.size()));
  const TabulationParams tab_params = choose_params(a.size(), b.size(), options.key_budget_bits);
  const HybridParams hyb_params = choose_hybrid_params(a.size(), b.size(), options.key_budget_bits);
  const bool prune = options.prune && options.mode != LctsMode::all_naive;

  std::atomic<std::int64_t> best{-1};
  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;

  auto worker = [&] {
    LctsReport local;
    local.result = -1;
    for (std::size_t idx = next++; idx < order.size(); idx = next++) {
      const std::int64_t t = order[idx];
      const auto r_t = static_cast<std::int64_t>(plan.r(t));
      if (prune && std::min(r_t, cap) <= best.load()) {
        ++local.shifts_pruned;
        continue;
      }
      const detail::MatchView view{a.symbols(), b.symbols(), sigma, t};
      EngineCounters c;
      std::int64_t value = 0;
      if (options.mode == LctsMode::all_naive) {
        value = detail::naive_lcs(view);
        ++local.naive_runs;
      } else if (options.mode == LctsMode::all_tabulated || plan.route(t) == TranspositionRoute::tabulated) {
        value = detail::tabulated_lcs(view, tab_params, &c);
        ++local.tabulated_runs;
      } else {
        value = detail::hybrid_lcs(view, hyb_params, &c);
        ++local.hybrid_runs;
      }
      ++local.shifts_evaluated;
      local.counters.merge(c);
      if (value > local.result || (value == local.result && t < local.best_shift)) {
        local.result = value;
        local.best_shift = t;
      }
      std::int64_t seen = best.load();
      while (value > seen && !best.compare_exchange_weak(seen, value)) {
      }
    }
    std::lock_guard lock(merge_mutex);
    if (local.result > report.result || (local.result == report.result && local.best_shift < report.best_shift)) {
      report.result = local.result;
      report.best_shift = local.best_shift;
    }
    report.shifts_evaluated += local.shifts_evaluated;
    report.shifts_pruned += local.shifts_pruned;
    report.tabulated_runs += local.tabulated_runs;
    report.hybrid_runs += local.hybrid_runs;
    report.naive_runs += local.naive_runs;
    report.counters.merge(local.counters);
  };

  const unsigned threads = std::max(1U, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  report.result = std::max<std::int64_t>(report.result, 0);
  return report;
}

std::int64_t lcts(const Sequence& a, const Sequence& b, std::uint32_t sigma, LctsMode mode) {
  LctsOptions options;
  options.mode = mode;
  return lcts_run(a, b, sigma, options).result;
}

std::int64_t lcts_reference(const Sequence& a, const Sequence& b, std::uint32_t sigma) {
  check_alphabet(a, sigma);
  check_alphabet(b, sigma);
  std::int64_t best = 0;
  for (std::int64_t t = -static_cast<std::int64_t>(sigma) + 1; t < static_cast<std::int64_t>(sigma); ++t)
    best = std::max(best, detail::naive_lcs({a.symbols(), b.symbols(), sigma, t}));
  return best;
}

// ---- MerLCS --------------------------------------------------------------

unsigned cube_key_bits(unsigned b) noexcept {
  return 2 * b + 3 * b * b + b * static_cast<unsigned>(std::bit_width(2 * b));
}

unsigned cube_value_bits(unsigned b) noexcept { return 3 * b * b; }

namespace {

/// Dense (wi+1) x (wj+1) x (wk+1) scratch cube.
class LocalCube {
 public:
  LocalCube(unsigned wi, unsigned wj, unsigned wk)
      : wi_(wi), wj_(wj), wk_(wk), v_(std::size_t{wi + 1} * (wj + 1) * (wk + 1), 0) {}

  std::int64_t& at(unsigned i, unsigned j, unsigned k) { return v_[(std::size_t{i} * (wj_ + 1) + j) * (wk_ + 1) + k]; }

  /// Interior fill; a_hit(di, dk) / b_hit(dj, dk) are the 1-based match predicates.
  template <class AHit, class BHit>
  void fill(AHit&& a_hit, BHit&& b_hit) {
    for (unsigned i = 1; i <= wi_; ++i)
      for (unsigned j = 1; j <= wj_; ++j)
        for (unsigned k = 1; k <= wk_; ++k) {
          std::int64_t best = std::max({at(i - 1, j, k), at(i, j - 1, k), at(i, j, k - 1)});
          if (a_hit(i, k)) best = std::max(best, at(i - 1, j, k - 1) + 1);
          if (b_hit(j, k)) best = std::max(best, at(i, j - 1, k - 1) + 1);
          at(i, j, k) = best;
        }
  }

 private:
  unsigned wi_;
  unsigned wj_;
  unsigned wk_;
  std::vector<std::int64_t> v_;
};

struct CubeFields {
  unsigned b;
  unsigned edge_j() const { return 0; }
  unsigned edge_i() const { return b; }
  unsigned wall_k() const { return 2 * b; }
  unsigned wall_i() const { return 2 * b + b * b; }
  unsigned wall_j() const { return 2 * b + 2 * b * b; }
  unsigned codes() const { return 2 * b + 3 * b * b; }
};

bool bit(std::uint64_t word, unsigned pos) { return ((word >> pos) & 1U) != 0; }

/// Reads the cube's input walls (relative to the corner) from `c` into a key.
std::uint64_t encode_walls(LocalCube& c, unsigned b) {
  const CubeFields f{b};
  std::uint64_t key = 0;
  auto put = [&key](unsigned pos, std::int64_t d) { key |= std::uint64_t(d != 0) << pos; };
  for (unsigned dj = 1; dj <= b; ++dj) put(f.edge_j() + dj - 1, c.at(0, dj, 0) - c.at(0, dj - 1, 0));
  for (unsigned di = 1; di <= b; ++di) put(f.edge_i() + di - 1, c.at(di, 0, 0) - c.at(di - 1, 0, 0));
  for (unsigned di = 1; di <= b; ++di)
    for (unsigned dj = 1; dj <= b; ++dj)
      put(f.wall_k() + (di - 1) * b + dj - 1, c.at(di, dj, 0) - c.at(di - 1, dj, 0));
  for (unsigned dj = 1; dj <= b; ++dj)
    for (unsigned dk = 1; dk <= b; ++dk)
      put(f.wall_i() + (dj - 1) * b + dk - 1, c.at(0, dj, dk) - c.at(0, dj, dk - 1));
  for (unsigned di = 1; di <= b; ++di)
    for (unsigned dk = 1; dk <= b; ++dk)
      put(f.wall_j() + (di - 1) * b + dk - 1, c.at(di, 0, dk) - c.at(di, 0, dk - 1));
  return key;
}

/// Rebuilds the output walls in `c` from a packed value, anchored on the
/// cube's input walls.
void decode_output(LocalCube& c, unsigned b, std::uint64_t value) {
  const unsigned bb = b * b;
  for (unsigned dj = 1; dj <= b; ++dj)
    for (unsigned dk = 1; dk <= b; ++dk) c.at(b, dj, dk) = c.at(b, dj, dk - 1) + bit(value, (dj - 1) * b + dk - 1);
  for (unsigned di = 1; di <= b; ++di)
    for (unsigned dk = 1; dk <= b; ++dk)
      c.at(di, b, dk) = c.at(di, b, dk - 1) + bit(value, bb + (di - 1) * b + dk - 1);
  for (unsigned di = 1; di <= b; ++di)
    for (unsigned dj = 1; dj <= b; ++dj)
      c.at(di, dj, b) = c.at(di - 1, dj, b) + bit(value, 2 * bb + (di - 1) * b + dj - 1);
}

}  // namespace

CubeLut::CubeLut(unsigned b, std::vector<std::uint32_t> a_codes, std::vector<std::uint32_t> b_codes,
                 std::uint32_t sentinel)
    : b_(b), a_codes_(std::move(a_codes)), b_codes_(std::move(b_codes)), sentinel_(sentinel) {
  if (b_ == 0 || a_codes_.size() != b_ || b_codes_.size() != b_) throw std::invalid_argument("CubeLut: bad block");
}

unsigned CubeLut::code_bits() const noexcept { return static_cast<unsigned>(std::bit_width(2 * b_)); }

std::uint64_t CubeLut::operator()(std::uint64_t key) {
  auto [it, inserted] = memo_.try_emplace(key, 0);
  if (inserted) it->second = compute(key);
  else ++hits_;
  return it->second;
}

std::uint64_t CubeLut::compute(std::uint64_t key) const {
  const unsigned b = b_;
  const CubeFields f{b};
  LocalCube c(b, b, b);
  for (unsigned dj = 1; dj <= b; ++dj) c.at(0, dj, 0) = c.at(0, dj - 1, 0) + bit(key, f.edge_j() + dj - 1);
  for (unsigned di = 1; di <= b; ++di) c.at(di, 0, 0) = c.at(di - 1, 0, 0) + bit(key, f.edge_i() + di - 1);
  for (unsigned di = 1; di <= b; ++di)
    for (unsigned dj = 1; dj <= b; ++dj)
      c.at(di, dj, 0) = c.at(di - 1, dj, 0) + bit(key, f.wall_k() + (di - 1) * b + dj - 1);
  for (unsigned dj = 1; dj <= b; ++dj)
    for (unsigned dk = 1; dk <= b; ++dk)
      c.at(0, dj, dk) = c.at(0, dj, dk - 1) + bit(key, f.wall_i() + (dj - 1) * b + dk - 1);
  for (unsigned di = 1; di <= b; ++di)
    for (unsigned dk = 1; dk <= b; ++dk)
      c.at(di, 0, dk) = c.at(di, 0, dk - 1) + bit(key, f.wall_j() + (di - 1) * b + dk - 1);

  const unsigned cw = code_bits();
  const std::uint64_t code_mask = (std::uint64_t{1} << cw) - 1;
  std::uint32_t p_codes[kMaxBlockSide];
  for (unsigned dk = 0; dk < b; ++dk) p_codes[dk] = static_cast<std::uint32_t>((key >> (f.codes() + dk * cw)) & code_mask);
  c.fill([&](unsigned di, unsigned dk) { return a_codes_[di - 1] == p_codes[dk - 1]; },
         [&](unsigned dj, unsigned dk) { return b_codes_[dj - 1] == p_codes[dk - 1]; });

  std::uint64_t value = 0;
  const unsigned bb = b * b;
  for (unsigned dj = 1; dj <= b; ++dj)
    for (unsigned dk = 1; dk <= b; ++dk)
      value |= std::uint64_t(c.at(b, dj, dk) != c.at(b, dj, dk - 1)) << ((dj - 1) * b + dk - 1);
  for (unsigned di = 1; di <= b; ++di)
    for (unsigned dk = 1; dk <= b; ++dk)
      value |= std::uint64_t(c.at(di, b, dk) != c.at(di, b, dk - 1)) << (bb + (di - 1) * b + dk - 1);
  for (unsigned di = 1; di <= b; ++di)
    for (unsigned dj = 1; dj <= b; ++dj)
      value |= std::uint64_t(c.at(di, dj, b) != c.at(di - 1, dj, b)) << (2 * bb + (di - 1) * b + dj - 1);
  return value;
}

void CubeLut::fill_all() {
  const unsigned wall_bits = CubeFields{b_}.codes();
  if (wall_bits + b_ * code_bits() > 40) throw std::invalid_argument("CubeLut: key space too large to enumerate");
  const unsigned cw = code_bits();
  const std::uint64_t code_space = std::uint64_t{1} << (b_ * cw);
  const std::uint64_t code_mask = (std::uint64_t{1} << cw) - 1;
  for (std::uint64_t codes = 0; codes < code_space; ++codes) {
    bool legal = true;
    for (unsigned dk = 0; dk < b_; ++dk) legal = legal && ((codes >> (dk * cw)) & code_mask) <= sentinel_;
    if (!legal) continue;
    for (std::uint64_t walls = 0; walls < (std::uint64_t{1} << wall_bits); ++walls) (*this)(walls | (codes << wall_bits));
  }
}

namespace {

/// LLCS of every prefix pair, as an (x.size()+1) x (p.size()+1) table.
std::vector<std::int64_t> prefix_lcs_table(std::span<const Symbol> x, std::span<const Symbol> p) {
  const std::size_t w = p.size() + 1;
  std::vector<std::int64_t> t((x.size() + 1) * w, 0);
  for (std::size_t i = 1; i <= x.size(); ++i)
    for (std::size_t k = 1; k <= p.size(); ++k)
      t[i * w + k] = x[i - 1] == p[k - 1] ? t[(i - 1) * w + k - 1] + 1 : std::max(t[(i - 1) * w + k], t[i * w + k - 1]);
  return t;
}

}  // namespace

std::int64_t merlcs_tabulated(const Sequence& a, const Sequence& b, const Sequence& p, const MerlcsOptions& options,
                              MerlcsCounters* counters) {
  const unsigned cb = options.cube_b;
  if (cb == 0 || cb > kMaxBlockSide) throw std::invalid_argument("merlcs: cube side must be in [1, 32]");
  if (cube_key_bits(cb) > std::min(options.key_budget_bits, 64U))
    throw std::invalid_argument("merlcs: cube key exceeds the budget");

  const auto norm = normalize_alphabet(a, b, p);
  const auto A = norm.a.symbols();
  const auto B = norm.b.symbols();
  const auto P = norm.p.symbols();
  const std::size_t n = A.size();
  const std::size_t m = B.size();
  const std::size_t u = P.size();
  const std::size_t w = u + 1;

  MerlcsCounters local;
  AuxMemoryScope scope;
  auto finish = [&](std::int64_t result) {
    if (counters) {
      local.peak_aux_bytes = scope.peak_bytes();
      *counters = local;
    }
    return result;
  };
  if (u == 0) return finish(0);

  const auto lcs_bp = prefix_lcs_table(B, P);
  const auto lcs_ap = prefix_lcs_table(A, P);
  if (n == 0) return finish(lcs_bp[m * w + u]);
  if (m == 0) return finish(lcs_ap[n * w + u]);

  // plane_i: values at i = i0 for every (j, k). plane_j: values at j = j0 for
  // i in [i0, i0 + b] and every k. plane_k: values at k = k0 on one column.
  aux_vector<std::int64_t> plane_i(lcs_bp.begin(), lcs_bp.end());
  aux_vector<std::int64_t> plane_i_next((m + 1) * w);
  aux_vector<std::int64_t> plane_j((cb + 1) * w);
  aux_vector<std::int64_t> plane_j_next((cb + 1) * w);
  aux_vector<std::int64_t> plane_k((cb + 1) * (cb + 1));
  std::vector<Symbol> column_symbols;
  std::vector<std::uint32_t> p_codes(u);

  for (std::size_t i0 = 0; i0 < n; i0 += cb) {
    const unsigned wi = static_cast<unsigned>(std::min<std::size_t>(cb, n - i0));
    for (unsigned di = 0; di <= wi; ++di)
      for (std::size_t k = 0; k <= u; ++k) plane_j[di * w + k] = lcs_ap[(i0 + di) * w + k];
    for (std::size_t k = 0; k <= u; ++k) plane_i_next[k] = lcs_ap[(i0 + wi) * w + k];

    for (std::size_t j0 = 0; j0 < m; j0 += cb) {
      const unsigned wj = static_cast<unsigned>(std::min<std::size_t>(cb, m - j0));
      const bool full_column = wi == cb && wj == cb;
      std::optional<CubeLut> lut;
      if (full_column) {
        column_symbols.assign(A.begin() + i0, A.begin() + i0 + cb);
        column_symbols.insert(column_symbols.end(), B.begin() + j0, B.begin() + j0 + cb);
        std::sort(column_symbols.begin(), column_symbols.end());
        column_symbols.erase(std::unique(column_symbols.begin(), column_symbols.end()), column_symbols.end());
        const auto q = static_cast<std::uint32_t>(column_symbols.size());
        auto code_of = [&](Symbol s) {
          const auto it = std::lower_bound(column_symbols.begin(), column_symbols.end(), s);
          return it != column_symbols.end() && *it == s ? static_cast<std::uint32_t>(it - column_symbols.begin()) : q;
        };
        std::vector<std::uint32_t> ac(cb);
        std::vector<std::uint32_t> bc(cb);
        for (unsigned d = 0; d < cb; ++d) {
          ac[d] = code_of(A[i0 + d]);
          bc[d] = code_of(B[j0 + d]);
        }
        for (std::size_t k = 0; k < u; ++k) p_codes[k] = code_of(P[k]);
        lut.emplace(cb, std::move(ac), std::move(bc), q);
        ++local.columns;
      }

      std::fill(plane_k.begin(), plane_k.end(), 0);
      for (std::size_t k0 = 0; k0 < u; k0 += cb) {
        const unsigned wk = static_cast<unsigned>(std::min<std::size_t>(cb, u - k0));
        LocalCube cube(wi, wj, wk);
        for (unsigned dj = 0; dj <= wj; ++dj)
          for (unsigned dk = 0; dk <= wk; ++dk) cube.at(0, dj, dk) = plane_i[(j0 + dj) * w + k0 + dk];
        for (unsigned di = 0; di <= wi; ++di)
          for (unsigned dk = 0; dk <= wk; ++dk) cube.at(di, 0, dk) = plane_j[di * w + k0 + dk];
        for (unsigned di = 0; di <= wi; ++di)
          for (unsigned dj = 0; dj <= wj; ++dj) cube.at(di, dj, 0) = plane_k[di * (cb + 1) + dj];

        if (full_column && wk == cb) {
          const unsigned cw = lut->code_bits();
          std::uint64_t key = encode_walls(cube, cb);
          for (unsigned dk = 0; dk < cb; ++dk) key |= std::uint64_t{p_codes[k0 + dk]} << (CubeFields{cb}.codes() + dk * cw);
          const std::uint64_t value = (*lut)(key);
          decode_output(cube, cb, value);
          ++local.cubes;
        } else {
          cube.fill([&](unsigned di, unsigned dk) { return A[i0 + di - 1] == P[k0 + dk - 1]; },
                    [&](unsigned dj, unsigned dk) { return B[j0 + dj - 1] == P[k0 + dk - 1]; });
          ++local.ragged_cubes;
        }

        for (unsigned dj = 0; dj <= wj; ++dj)
          for (unsigned dk = 0; dk <= wk; ++dk) plane_i_next[(j0 + dj) * w + k0 + dk] = cube.at(wi, dj, dk);
        for (unsigned di = 0; di <= wi; ++di)
          for (unsigned dk = 0; dk <= wk; ++dk) plane_j_next[di * w + k0 + dk] = cube.at(di, wj, dk);
        for (unsigned di = 0; di <= wi; ++di)
          for (unsigned dj = 0; dj <= wj; ++dj) plane_k[di * (cb + 1) + dj] = cube.at(di, dj, wk);
      }
      if (lut) {
        local.lut_entries += lut->entries();
        local.lut_hits += lut->hits();
      }
      std::swap(plane_j, plane_j_next);
    }
    std::swap(plane_i, plane_i_next);
  }
  return finish(plane_i[m * w + u]);
}

}  // namespace subseq
