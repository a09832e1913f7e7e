#include <bit>
#include <random>

#include "subseq/cli.hpp"
#include "subseq/dp_reference.hpp"
#include "subseq/generator.hpp"
#include "subseq/sparse_hybrid.hpp"
#include "subseq/variants.hpp"

namespace subseq::cli {

namespace {

template <class Check>
SelftestResult suite(std::string name, std::uint64_t total, Check&& check) {
  SelftestResult r{std::move(name), 0, total};
  for (std::uint64_t i = 0; i < total; ++i)
    if (check(i)) ++r.passed;
  return r;
}

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed) {
  std::vector<SelftestResult> out;
  std::mt19937_64 rng(seed);
  const std::uint32_t sigmas[] = {2, 4, 16, 256};

  out.push_back(suite("lcs engines agree", 100, [&](std::uint64_t i) {
    const auto g = generate_instance(1 + rng() % 120, 1 + rng() % 120, sigmas[i % 4], rng());
    const std::int64_t want = lcs_naive(g.a, g.b);
    HybridParams direct = choose_hybrid_params(g.a.size(), g.b.size());
    direct.dense_strategy = DenseStrategy::direct_dp;
    return hunt_szymanski(g.a, g.b) == want && lcs_tabulated(g.a, g.b) == want && lcs_hybrid(g.a, g.b) == want &&
           lcs_hybrid(g.a, g.b, direct) == want;
  }));

  out.push_back(suite("edit engines agree", 50, [&](std::uint64_t i) {
    const auto g = generate_instance(rng() % 100, rng() % 100, sigmas[i % 4], rng());
    const std::int64_t want = edit_distance_naive(g.a, g.b);
    return edit_distance_tabulated(g.a, g.b) == want && edit_distance_hybrid(g.a, g.b) == want;
  }));

  {
    // Every entry of every stripe LUT with x1, x2 <= 2 over a 3-symbol superblock.
    std::uint64_t total = 0;
    std::uint64_t passed = 0;
    for (unsigned x1 = 1; x1 <= 2; ++x1)
      for (unsigned x2 = 1; x2 <= 2; ++x2) {
        TabulationParams p{x1, x2, x2 * 3, kDefaultKeyBudget};
        std::vector<std::uint32_t> codes(x2);
        for (unsigned r = 0; r < x2; ++r) codes[r] = r % 3;
        const auto lut = build_stripe_lut(codes, p, 3);
        const StripeLayout layout{x1, x2, code_bits_for(3), 1};
        const OutputCodec<LcsRule> codec{x1, x2};
        for (std::uint64_t key = 0; key < lut.size(); ++key) {
          std::vector<std::uint32_t> a(x1);
          for (unsigned c = 0; c < x1; ++c)
            a[c] = static_cast<std::uint32_t>((key >> (layout.left_bits() + layout.top_bits() + c * layout.code_bits)) & 3U);
          const std::uint64_t left = key & ((1U << x2) - 1);
          const std::uint64_t top = (key >> x2) & ((1U << x1) - 1);
          const BlockOutput want =
              solve_block<LcsRule>(x1, x2, top, left, [&](unsigned c, unsigned r) { return a[c] == codes[r]; });
          ++total;
          if (codec.unpack(lut[key]) == want) ++passed;
        }
      }
    out.push_back({"stripe LUT sweep", passed, total});
  }

  {
    HybridParams p;
    p.b = 2;
    p.k = 2;
    const auto lut = build_sparse_lut(p);
    std::uint64_t total = 0;
    std::uint64_t passed = 0;
    std::vector<std::uint32_t> cells;
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
      if (std::popcount(mask) > 2) continue;
      cells.clear();
      for (std::uint32_t c = 0; c < 4; ++c)
        if (mask >> c & 1U) cells.push_back(c);
      for (std::uint64_t top = 0; top < 4; ++top)
        for (std::uint64_t left = 0; left < 4; ++left) {
          const SparseBlockKey key{top, left, cells};
          const BlockOutput want = solve_block<LcsRule>(2, 2, top, left, [&](unsigned c, unsigned r) {
            return ((mask >> (r * 2 + c)) & 1U) != 0;
          });
          ++total;
          if (lut->codec.unpack(lut->table[key.pack(p)]) == want) ++passed;
        }
    }
    out.push_back({"sparse LUT sweep b=2 K=2", passed, total});
  }

  out.push_back(suite("lcts routing", 20, [&](std::uint64_t i) {
    const std::uint32_t sigma = 4U << (i % 3);
    const Sequence a = random_sequence(1 + rng() % 60, sigma, rng());
    const Sequence b = random_sequence(1 + rng() % 60, sigma, rng());
    return lcts(a, b, sigma) == lcts_reference(a, b, sigma);
  }));

  out.push_back(suite("merlcs cubes", 30, [&](std::uint64_t i) {
    const Sequence a = random_sequence(rng() % 20, 3, rng());
    const Sequence b = random_sequence(rng() % 20, 3, rng());
    const Sequence p = random_sequence(1 + rng() % 12, 3, rng());
    const std::int64_t want = merlcs_naive(a, b, p);
    return merlcs_tabulated(a, b, p, {static_cast<unsigned>(1 + i % 3)}) == want;
  }));
  return out;
}

}  // namespace subseq::cli
