// Acceptance driver: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"
#include "support/oracles.hpp"

#include "subseq/block_kernel.hpp"
#include "subseq/cli.hpp"
#include "subseq/dp_reference.hpp"
#include "subseq/sparse_hybrid.hpp"
#include "subseq/tabulation.hpp"
#include "subseq/variants.hpp"

using namespace subseq;
using oracle::Rng;

namespace {

/// Failure detail collected while a criterion runs; empty means pass.
struct Outcome {
  std::string failure;
  std::string note;
  bool ok() const { return failure.empty(); }
};

#define EXPECT(cond, what)                                     \
  do {                                                         \
    if (!(cond)) {                                             \
      std::ostringstream os_;                                  \
      os_ << what;                                             \
      return Outcome{os_.str(), ""};                           \
    }                                                          \
  } while (0)

struct Instance {
  Sequence a, b;
  std::uint32_t sigma;
};

const std::vector<Instance>& lcs_corpus() {
  static const std::vector<Instance> corpus = [] {
    std::vector<Instance> out;
    Rng rng(20240601);
    const std::uint32_t sigmas[] = {2, 4, 16, 256};
    for (int k = 0; k < 10000; ++k) {
      const std::uint32_t sigma = sigmas[k % 4];
      // A sprinkling of very short A so the exponential oracle can join in.
      const std::size_t n = k % 5 == 0 ? rng.between(1, 12) : rng.between(1, 300);
      const std::size_t m = rng.between(1, 300);
      out.push_back({rng.sequence(n, sigma), rng.sequence(m, sigma), sigma});
    }
    return out;
  }();
  return corpus;
}

std::vector<int> bits_of(std::uint64_t packed, unsigned count) {
  std::vector<int> out;
  for (unsigned k = 0; k < count; ++k) out.push_back(static_cast<int>((packed >> k) & 1U));
  return out;
}

Outcome lcs_oracle_equivalence() {
  std::uint64_t brute = 0;
  for (std::size_t k = 0; k < lcs_corpus().size(); ++k) {
    const auto& [a, b, sigma] = lcs_corpus()[k];
    const std::int64_t want = oracle::lcs(a, b);
    EXPECT(lcs_naive(a, b) == want, "naive differs on instance " << k);
    if (a.size() <= 12) {
      ++brute;
      EXPECT(lcs_bruteforce(a, b) == want, "bruteforce differs on instance " << k);
    }
    EXPECT(hunt_szymanski(a, b) == want, "hunt_szymanski differs on instance " << k);
    EXPECT(lcs_tabulated(a, b) == want, "tabulated differs on instance " << k);
    for (auto strategy : {DenseStrategy::tabulated, DenseStrategy::direct_dp}) {
      HybridParams p = choose_hybrid_params(a.size(), b.size());
      if (k % 3 == 1) p = HybridParams{2, 1, kDefaultKeyBudget};
      if (k % 3 == 2) p = HybridParams{4, 2, kDefaultKeyBudget};
      p.dense_strategy = strategy;
      EXPECT(lcs_hybrid(a, b, p) == want, "hybrid differs on instance " << k);
    }
  }
  return {"", std::to_string(lcs_corpus().size()) + " instances, " + std::to_string(brute) + " with bruteforce"};
}

Outcome exhaustive_luts() {
  std::uint64_t entries = 0;
  for (unsigned x1 = 1; x1 <= 3; ++x1)
    for (unsigned x2 = 1; x2 <= 3; ++x2)
      for (std::uint32_t q_max = 1; q_max <= x2; ++q_max) {
        std::vector<std::uint32_t> bcodes(x2);
        for (unsigned r = 0; r < x2; ++r) bcodes[r] = r % q_max;
        const TabulationParams p{x1, x2, x2 * q_max, 30};
        const auto lut = build_stripe_lut(bcodes, p, q_max);
        const unsigned cb = code_bits_for(q_max);
        const OutputCodec<LcsRule> codec{x1, x2};
        for (std::uint64_t key = 0; key < lut.size(); ++key) {
          std::vector<std::uint64_t> acodes(x1);
          for (unsigned c = 0; c < x1; ++c) acodes[c] = (key >> (x1 + x2 + c * cb)) & ((1U << cb) - 1);
          const auto want = oracle::block_dp(x1, x2, bits_of(key >> x2, x1), bits_of(key, x2),
                                             [&](unsigned c, unsigned r) { return acodes[c] == bcodes[r]; });
          const auto got = codec.unpack(lut[key]);
          EXPECT(bits_of(got.bottom, x1) == want.bottom && bits_of(got.right, x2) == want.right &&
                     got.delta == want.delta,
                 "stripe LUT x1=" << x1 << " x2=" << x2 << " key " << key);
          ++entries;
        }
      }
  for (unsigned b = 1; b <= 3; ++b)
    for (unsigned k = 1; k <= 3; ++k) {
      const HybridParams p{b, k, 30};
      const auto lut = build_sparse_lut(p);
      std::uint64_t seen = 0;
      // Every match set of size <= K as a bitmask over the b*b cells.
      for (std::uint32_t mask = 0; mask < (1U << (b * b)); ++mask) {
        if (static_cast<unsigned>(std::popcount(mask)) > k) continue;
        std::vector<std::uint32_t> cells;
        for (std::uint32_t c = 0; c < b * b; ++c)
          if (mask >> c & 1U) cells.push_back(c);
        for (std::uint64_t top = 0; top < (1U << b); ++top)
          for (std::uint64_t left = 0; left < (1U << b); ++left) {
            const SparseBlockKey key{top, left, cells};
            const auto want = oracle::block_dp(b, b, bits_of(top, b), bits_of(left, b),
                                               [&](unsigned c, unsigned r) { return mask >> (r * b + c) & 1U; });
            const auto got = lut->codec.unpack(lut->table[key.pack(p)]);
            EXPECT(bits_of(got.bottom, b) == want.bottom && bits_of(got.right, b) == want.right &&
                       got.delta == want.delta,
                   "sparse LUT b=" << b << " K=" << k << " mask " << mask);
            ++seen;
            ++entries;
          }
      }
      EXPECT(seen == lut->table.built(), "sparse LUT b=" << b << " K=" << k << " built " << lut->table.built());
    }
  return {"", std::to_string(entries) + " entries checked"};
}

/// Relabels a realization so that each connected component of the match
/// graph gets a fresh symbol; the match set is unchanged but the symbols are not.
std::pair<std::vector<Symbol>, std::vector<Symbol>> relabel(const Sequence& x, const Sequence& y, Rng& rng) {
  const std::size_t w = x.size(), h = y.size();
  std::vector<std::size_t> parent(w + h);
  for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (std::size_t c = 0; c < w; ++c)
    for (std::size_t r = 0; r < h; ++r)
      if (x[c] == y[r]) parent[find(c)] = find(w + r);
  std::map<std::size_t, Symbol> label;
  const Symbol base = static_cast<Symbol>(rng.below(1U << 30));
  std::vector<Symbol> x2(w), y2(h);
  for (std::size_t v = 0; v < w + h; ++v) {
    const auto root = find(v);
    if (!label.count(root)) label[root] = base + static_cast<Symbol>(label.size()) * 7919U;
    (v < w ? x2[v] : y2[v - w]) = label[root];
  }
  return {x2, y2};
}

Outcome symbol_independence() {
  // Exhaustive: every assignment over a 2b-letter alphabet against the symbol-free transition.
  std::uint64_t assignments = 0;
  for (unsigned b = 1; b <= 3; ++b) {
    const HybridParams p{b, b * b, 64};
    const std::uint32_t alpha = 2 * b;
    std::uint64_t total = 1;
    for (unsigned k = 0; k < 2 * b; ++k) total *= alpha;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<Symbol> x(b), y(b);
      std::uint64_t c = code;
      for (unsigned k = 0; k < b; ++k, c /= alpha) x[k] = static_cast<Symbol>(c % alpha);
      for (unsigned k = 0; k < b; ++k, c /= alpha) y[k] = static_cast<Symbol>(c % alpha);
      std::vector<std::uint32_t> cells;
      for (unsigned r = 0; r < b; ++r)
        for (unsigned col = 0; col < b; ++col)
          if (x[col] == y[r]) cells.push_back(r * b + col);
      for (std::uint64_t top = 0; top < (1U << b); ++top)
        for (std::uint64_t left = 0; left < (1U << b); ++left) {
          const auto by_symbols =
              solve_block<LcsRule>(b, b, top, left, [&](unsigned col, unsigned r) { return x[col] == y[r]; });
          EXPECT(by_symbols == sparse_block_transition(SparseBlockKey{top, left, cells}, p),
                 "b=" << b << " assignment " << code);
        }
      ++assignments;
    }
  }
  // Randomized up to b = 8: two different realizations of one match set.
  Rng rng(777);
  std::uint64_t trials = 0, via_lut = 0;
  while (trials < 100000) {
    const unsigned b = 1 + static_cast<unsigned>(rng.below(8));
    const Sequence x = rng.sequence(b, 1 + static_cast<std::uint32_t>(rng.below(2 * b)));
    const Sequence y = rng.sequence(b, 1 + static_cast<std::uint32_t>(rng.below(2 * b)));
    const auto [x2, y2] = relabel(x, y, rng);
    const std::uint64_t top = rng.below(std::uint64_t{1} << b), left = rng.below(std::uint64_t{1} << b);
    const auto first = solve_block<LcsRule>(b, b, top, left, [&](unsigned c, unsigned r) { return x[c] == y[r]; });
    const auto second = solve_block<LcsRule>(b, b, top, left, [&](unsigned c, unsigned r) { return x2[c] == y2[r]; });
    EXPECT(first == second, "randomized trial " << trials << " b=" << b);
    std::vector<std::uint32_t> cells;
    for (unsigned r = 0; r < b; ++r)
      for (unsigned c = 0; c < b; ++c)
        if (x[c] == y[r]) cells.push_back(r * b + c);
    if (cells.size() <= 7) {
      EXPECT(first == sparse_block_transition(SparseBlockKey{top, left, cells}, HybridParams{b, 7, 64}),
             "sparse transition, trial " << trials);
      ++via_lut;
    }
    ++trials;
  }
  return {"", std::to_string(assignments) + " exhaustive assignments, " + std::to_string(trials) + " random trials (" +
                  std::to_string(via_lut) + " also through the sparse transition)"};
}

Outcome adjacency() {
  std::uint64_t matrices = 0;
  for (std::size_t k = 0; k < lcs_corpus().size(); k += 10) {
    const auto& [a, b, sigma] = lcs_corpus()[k];
    const DpMatrix l = lcs_matrix(a, b);
    const DpMatrix e = edit_distance_matrix(a, b);
    EXPECT(l.adjacency_holds() && e.adjacency_holds(), "library adjacency check, instance " << k);
    for (std::size_t i = 0; i <= a.size(); ++i)
      for (std::size_t j = 0; j <= b.size(); ++j) {
        if (i > 0) {
          const auto dl = l.at(i, j) - l.at(i - 1, j), de = e.at(i, j) - e.at(i - 1, j);
          EXPECT(dl >= 0 && dl <= 1 && de >= -1 && de <= 1, "vertical difference at " << i << "," << j);
        }
        if (j > 0) {
          const auto dl = l.at(i, j) - l.at(i, j - 1), de = e.at(i, j) - e.at(i, j - 1);
          EXPECT(dl >= 0 && dl <= 1 && de >= -1 && de <= 1, "horizontal difference at " << i << "," << j);
        }
      }
    matrices += 2;
  }
  return {"", std::to_string(matrices) + " matrices"};
}

Outcome operation_counts() {
  Rng rng(555);
  for (int k = 0; k < 1000; ++k) {
    const std::uint32_t sigma = std::vector<std::uint32_t>{2, 4, 16, 256}[k % 4];
    const Sequence a = rng.sequence(rng.between(1, 300), sigma);
    const Sequence b = rng.sequence(rng.between(1, 300), sigma);
    const std::uint64_t n = a.size(), m = b.size();

    TabulationParams tp = choose_params(n, m);
    if (k % 2) tp = TabulationParams{1 + static_cast<unsigned>(rng.below(3)), 2, 4, kDefaultKeyBudget};
    EngineCounters tc;
    lcs_tabulated(a, b, tp, &tc);
    EXPECT(tc.blocks == oracle::ceil_div(n, tp.x1) * oracle::ceil_div(m, tp.x2), "tabulated block counter, instance " << k);
    EXPECT(tc.lut_lookups == (n / tp.x1) * (m / tp.x2), "tabulated lookup counter, instance " << k);
    EXPECT(tc.ragged_cells == n * m - tc.lut_lookups * tp.x1 * tp.x2, "ragged cells, instance " << k);

    for (auto strategy : {DenseStrategy::tabulated, DenseStrategy::direct_dp}) {
      HybridParams hp = choose_hybrid_params(n, m);
      hp.dense_strategy = strategy;
      EngineCounters hc;
      lcs_hybrid(a, b, hp, &hc);
      EXPECT(hc.sparse_lookups + hc.dense_blocks == (n / hp.b) * (m / hp.b), "hybrid census, instance " << k);
      EXPECT(hc.blocks == oracle::ceil_div(n, hp.b) * oracle::ceil_div(m, hp.b), "hybrid block count, instance " << k);
    }
  }
  return {"", "1000 instances"};
}

Outcome match_identities() {
  Rng rng(4242);
  for (int k = 0; k < 1000; ++k) {
    const std::uint32_t sigma = 1 + static_cast<std::uint32_t>(rng.below(64));
    const Sequence a = rng.sequence(rng.below(200), sigma);
    const Sequence b = rng.sequence(rng.below(200), sigma);
    EXPECT(count_matches(a, b) == oracle::quadratic_matches(a, b), "count_matches, instance " << k);
    const auto plan = plan_transpositions(a, b, sigma);
    std::uint64_t sum = 0;
    for (std::int64_t t = plan.min_shift(); t <= plan.max_shift(); ++t) sum += plan.r(t);
    EXPECT(sum == a.size() * b.size(), "sum of r_t, instance " << k);
  }
  return {"", "1000 instances"};
}

Outcome edit_distance() {
  EXPECT(edit_distance_tabulated(Sequence::from_bytes("kitten"), Sequence::from_bytes("sitting")) == 3, "kitten");
  EXPECT(edit_distance_hybrid(Sequence::from_bytes("kitten"), Sequence::from_bytes("sitting")) == 3, "kitten");
  for (std::size_t k = 0; k < lcs_corpus().size(); ++k) {
    const auto& [a, b, sigma] = lcs_corpus()[k];
    const auto want = oracle::edit(a, b);
    EXPECT(edit_distance_tabulated(a, b) == want, "tabulated edit, instance " << k);
    for (auto strategy : {DenseStrategy::tabulated, DenseStrategy::direct_dp}) {
      HybridParams p = choose_hybrid_params(a.size(), b.size(), kDefaultKeyBudget, DpKind::edit);
      p.dense_strategy = strategy;
      EXPECT(edit_distance_hybrid(a, b, p) == want, "hybrid edit, instance " << k);
    }
  }
  return {"", std::to_string(lcs_corpus().size()) + " instances"};
}

Outcome lcts_check() {
  Rng rng(8080);
  for (int k = 0; k < 1000; ++k) {
    const std::uint32_t sigma = std::vector<std::uint32_t>{4, 8, 16}[k % 3];
    const Sequence a = rng.sequence(rng.below(151), sigma);
    const Sequence b = rng.sequence(rng.below(151), sigma);
    EXPECT(lcts(a, b, sigma) == oracle::lcts(a, b, sigma), "instance " << k);
  }
  return {"", "1000 instances"};
}

Outcome merlcs_check() {
  Rng rng(9090);
  for (int k = 0; k < 1000; ++k) {
    const std::uint32_t sigma = 1 + static_cast<std::uint32_t>(rng.below(4));
    const Sequence a = rng.sequence(rng.below(13), sigma);
    const Sequence b = rng.sequence(rng.below(13), sigma);
    const Sequence p = rng.sequence(rng.below(11), sigma);
    const auto want = merlcs_naive(a, b, p);
    EXPECT(want == oracle::merlcs(a, b, p), "naive vs 3D oracle, instance " << k);
    EXPECT(merlcs_bruteforce(a, b, p) == want, "bruteforce, instance " << k);
    for (unsigned cube : {1U, 2U, 3U})
      EXPECT(merlcs_tabulated(a, b, p, MerlcsOptions{cube, kMerlcsKeyBudget}) == want,
             "cube_b=" << cube << ", instance " << k);
  }
  return {"", "1000 instances"};
}

Outcome performance_report() {
  // Reduced scale keeps the suite quick; the README reports the full-size run.
  cli::BenchConfig config;
  config.n = config.m = 20000;
  config.sigmas = {256};
  config.engines = {"naive", "tabulated"};
  config.seed = 12345;
  config.timing = false;
  std::ostringstream first, second;
  EXPECT(cli::run_bench(config, first), "bench reported a disagreement");
  EXPECT(cli::run_bench(config, second), "bench reported a disagreement");
  EXPECT(first.str() == second.str(), "bench output is not deterministic");

  config.timing = true;
  std::ostringstream timed;
  cli::run_bench(config, timed);
  std::istringstream lines(timed.str());
  std::string line, note;
  double naive_s = 0, tab_s = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j["engine"] == "naive") naive_s = j["wall_time_s"];
    if (j["engine"] == "tabulated") {
      tab_s = j["wall_time_s"];
      const double ratio = j["cells_per_block"];
      const unsigned area = j["x1"].get<unsigned>() * j["x2"].get<unsigned>();
      EXPECT(ratio == static_cast<double>(area), "cells per block " << ratio << " vs x1*x2 = " << area);
      note = "cells/block " + std::to_string(ratio);
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "n=m=20000 sigma=256: naive %.3fs, tabulated %.3fs (%s)", naive_s, tab_s,
                note.c_str());
  return {"", buf};
}

Outcome memory_contract() {
  Rng rng(31337);
  for (std::size_t n : {500U, 2000U, 8000U})
    for (std::uint32_t sigma : {2U, 16U, 256U}) {
      const Sequence a = rng.sequence(n, sigma), b = rng.sequence(n / 2 + 7, sigma);
      cli::RunConfig config;
      config.engine = "tabulated";
      const auto report = cli::run_similarity(config, a, b);
      EngineCounters c;
      lcs_tabulated(a, b, &c);
      const std::int64_t border = 64 * static_cast<std::int64_t>(a.size() + b.size()) + 4096;
      EXPECT(report.peak_aux_bytes > 0, "no allocation recorded");
      EXPECT(report.peak_aux_bytes <= static_cast<std::int64_t>(c.lut_bytes) + border,
             "n=" << n << " sigma=" << sigma << ": peak " << report.peak_aux_bytes << " > LUT " << c.lut_bytes
                  << " + border " << border);
    }
  return {"", "9 configurations"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"LCS oracle equivalence", lcs_oracle_equivalence},
      {"exhaustive LUT soundness", exhaustive_luts},
      {"sparse block symbol independence", symbol_independence},
      {"DP adjacency invariants", adjacency},
      {"operation-count contract", operation_counts},
      {"match-count identities", match_identities},
      {"edit distance equivalence", edit_distance},
      {"LCTS equivalence", lcts_check},
      {"MerLCS equivalence", merlcs_check},
      {"performance report (informational)", performance_report},
      {"memory contract", memory_contract},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s [%.1fs] %s\n", o.ok() ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), secs,
                o.ok() ? o.note.c_str() : o.failure.c_str());
    std::fflush(stdout);
    failures += o.ok() ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
