#include "doctest.h"
#include "support/oracles.hpp"

#include "subseq/dp_reference.hpp"
#include "subseq/variants.hpp"

using namespace subseq;
using oracle::text;

TEST_CASE("edit distance through both block engines") {
  CHECK(edit_distance_tabulated(text("kitten"), text("sitting")) == 3);
  CHECK(edit_distance_hybrid(text("kitten"), text("sitting")) == 3);
  CHECK(edit_distance_tabulated(Sequence{}, text("abc")) == 3);
  CHECK(edit_distance_hybrid(text("abcd"), Sequence{}) == 4);
  CHECK(edit_distance_tabulated(Sequence{}, Sequence{}) == 0);

  oracle::Rng rng(61);
  const TabulationParams shapes[] = {{1, 1, 1, 22}, {2, 2, 4, 22}, {3, 2, 2, 22}, {2, 3, 3, 22}};
  for (int iter = 0; iter < 300; ++iter) {
    const std::uint32_t sigma = std::vector<std::uint32_t>{2, 4, 16, 256}[iter % 4];
    const Sequence a = rng.sequence(rng.below(120), sigma);
    const Sequence b = rng.sequence(rng.below(120), sigma);
    const auto want = oracle::edit(a, b);
    REQUIRE(edit_distance_tabulated(a, b) == want);
    REQUIRE(edit_distance_tabulated(a, b, shapes[iter % 4]) == want);
    REQUIRE(edit_distance_hybrid(a, b) == want);
    const unsigned bs = 1 + static_cast<unsigned>(rng.below(3));
    for (auto strategy : {DenseStrategy::tabulated, DenseStrategy::direct_dp}) {
      EngineCounters c;
      REQUIRE(edit_distance_hybrid(a, b, HybridParams{bs, 1 + static_cast<unsigned>(rng.below(2)), 22, strategy}, &c) ==
              want);
      CHECK(c.sparse_lookups + c.dense_blocks == (a.size() / bs) * (b.size() / bs));
    }
    REQUIRE(edit_distance_tabulated(a, a) == 0);
  }
}

TEST_CASE("edit stripe LUTs equal the block DP for every key") {
  for (unsigned x1 = 1; x1 <= 2; ++x1)
    for (unsigned x2 = 1; x2 <= 2; ++x2) {
      const std::uint32_t q_max = 2;
      const TabulationParams p{x1, x2, x2 * q_max, 30};
      std::vector<std::uint32_t> b_codes(x2);
      for (unsigned r = 0; r < x2; ++r) b_codes[r] = r % q_max;
      const auto lut = build_edit_stripe_lut(b_codes, p, q_max);
      const unsigned cb = code_bits_for(q_max);
      const OutputCodec<EditRule> codec{x1, x2};
      // Enumerate valid borders only: every 2-bit field holds diff + 1 in {0,1,2}.
      std::uint64_t checked = 0;
      for (std::uint64_t key = 0; key < lut.size(); ++key) {
        std::vector<int> left, top;
        bool valid = true;
        for (unsigned r = 0; r < x2; ++r) {
          const int f = static_cast<int>((key >> (2 * r)) & 3);
          valid = valid && f != 3;
          left.push_back(f - 1);
        }
        for (unsigned c = 0; c < x1; ++c) {
          const int f = static_cast<int>((key >> (2 * x2 + 2 * c)) & 3);
          valid = valid && f != 3;
          top.push_back(f - 1);
        }
        if (!valid) continue;
        std::vector<std::uint64_t> a(x1);
        for (unsigned c = 0; c < x1; ++c) a[c] = (key >> (2 * x2 + 2 * x1 + c * cb)) & ((1U << cb) - 1);
        if (std::any_of(a.begin(), a.end(), [&](std::uint64_t v) { return v > q_max; })) continue;
        const auto want =
            oracle::block_dp(x1, x2, top, left, [&](unsigned c, unsigned r) { return a[c] == b_codes[r]; }, true);
        const BlockOutput got = codec.unpack(lut[key]);
        for (unsigned c = 0; c < x1; ++c)
          REQUIRE(static_cast<int>((got.bottom >> (2 * c)) & 3) - 1 == want.bottom[c]);
        for (unsigned r = 0; r < x2; ++r) REQUIRE(static_cast<int>((got.right >> (2 * r)) & 3) - 1 == want.right[r]);
        REQUIRE(got.delta == want.delta);
        ++checked;
      }
      CHECK(checked > 0);
    }
}

TEST_CASE("transposition plan") {
  auto plan = plan_transpositions(Sequence{0}, Sequence{0}, 2);
  CHECK(plan.r(0) == 1);
  CHECK(plan.r(-1) == 0);
  CHECK(plan.r(1) == 0);

  plan = plan_transpositions(Sequence{0, 1}, Sequence{1, 0}, 2);
  CHECK(plan.r(-1) == 1);
  CHECK(plan.r(0) == 2);
  CHECK(plan.r(1) == 1);
  CHECK(plan.total() == 4);

  CHECK_THROWS_AS(plan_transpositions(Sequence{5}, Sequence{0}, 3), std::invalid_argument);

  oracle::Rng rng(67);
  for (int iter = 0; iter < 200; ++iter) {
    const std::uint32_t sigma = 1 + static_cast<std::uint32_t>(rng.below(40));
    const Sequence a = rng.sequence(rng.below(60), sigma);
    const Sequence b = rng.sequence(rng.below(60), sigma);
    plan = plan_transpositions(a, b, sigma);
    REQUIRE(plan.total() == a.size() * b.size());
    REQUIRE(plan.counts.size() == 2 * sigma - 1);
    for (std::int64_t t = plan.min_shift(); t <= plan.max_shift(); ++t) {
      std::uint64_t want = 0;
      for (Symbol x : a)
        for (Symbol y : b) want += static_cast<std::int64_t>(y) - static_cast<std::int64_t>(x) == t;
      REQUIRE(plan.r(t) == want);
      REQUIRE((plan.route(t) == TranspositionRoute::tabulated) == (static_cast<double>(plan.r(t)) >= plan.threshold));
    }
  }
}

TEST_CASE("lcts examples") {
  CHECK(lcts(Sequence{0, 1, 2}, Sequence{5, 6, 7}, 8) == 3);
  CHECK(lcts(Sequence{1}, Sequence{3}, 4) == 1);
  CHECK(lcts(Sequence{}, Sequence{3}, 4) == 0);
  CHECK(lcts(Sequence{0, 2, 1}, Sequence{3, 5, 4}, 6, LctsMode::all_naive) == 3);
  const auto report = lcts_run(Sequence{0, 1, 2}, Sequence{5, 6, 7}, 8);
  CHECK(report.best_shift == 5);
  CHECK(report.result == 3);
}

TEST_CASE("lcts agrees with the shift oracle in every mode") {
  oracle::Rng rng(71);
  for (int iter = 0; iter < 60; ++iter) {
    const std::uint32_t sigma = std::vector<std::uint32_t>{2, 4, 16, 64}[iter % 4];
    const Sequence a = rng.sequence(rng.below(60), sigma);
    const Sequence b = rng.sequence(rng.below(60), sigma);
    const auto want = oracle::lcts(a, b, sigma);
    REQUIRE(lcts_reference(a, b, sigma) == want);
    for (auto mode : {LctsMode::automatic, LctsMode::all_tabulated, LctsMode::all_naive}) {
      LctsOptions opts;
      opts.mode = mode;
      opts.threads = 1 + static_cast<unsigned>(iter % 3);
      const auto plan = plan_transpositions(a, b, sigma);
      // Shifts without a single match cannot contribute and are never scheduled.
      std::uint64_t live = 0;
      for (std::int64_t t = plan.min_shift(); t <= plan.max_shift(); ++t) live += plan.r(t) > 0;
      if (a.empty() || b.empty()) live = 0;
      const auto report = lcts_run(a, b, sigma, opts);
      REQUIRE(report.result == want);
      CHECK(report.shifts_evaluated + report.shifts_pruned == live);
      opts.prune = false;
      opts.threshold = static_cast<double>(rng.below(40));
      const auto full = lcts_run(a, b, sigma, opts);
      REQUIRE(full.result == want);
      CHECK(full.shifts_evaluated == live);
      if (mode == LctsMode::automatic) {
        std::uint64_t dense = 0;
        for (std::int64_t t = plan.min_shift(); t <= plan.max_shift(); ++t)
          dense += plan.r(t) > 0 && static_cast<double>(plan.r(t)) >= *opts.threshold;
        CHECK(full.tabulated_runs == dense);
        CHECK(full.hybrid_runs == live - dense);
      }
      if (mode == LctsMode::all_naive) CHECK(full.naive_runs == live);
    }
  }
}

TEST_CASE("cube key widths") {
  CHECK(cube_key_bits(1) == 7);
  CHECK(cube_key_bits(2) == 22);
  CHECK(cube_key_bits(3) == 42);
  CHECK(cube_key_bits(4) > kMerlcsKeyBudget);
  CHECK(cube_value_bits(2) == 12);
}

TEST_CASE("merlcs_tabulated examples and errors") {
  CHECK(merlcs_tabulated(text("ab"), text("c"), text("acb")) == 3);
  CHECK(merlcs_tabulated(text("ab"), text("c"), Sequence{}) == 0);
  CHECK(merlcs_tabulated(Sequence{}, Sequence{}, text("abc")) == 0);
  CHECK(merlcs_tabulated(text("abcab"), Sequence{}, text("bacb")) == oracle::lcs(text("abcab"), text("bacb")));
  CHECK_THROWS_AS(merlcs_tabulated(text("a"), text("a"), text("a"), MerlcsOptions{4, 64}), std::invalid_argument);
  CHECK_THROWS_AS(merlcs_tabulated(text("a"), text("a"), text("a"), MerlcsOptions{0, 64}), std::invalid_argument);
  CHECK_THROWS_AS(merlcs_tabulated(text("a"), text("a"), text("a"), MerlcsOptions{3, 40}), std::invalid_argument);
}

TEST_CASE("merlcs_tabulated agrees with the 3D oracle") {
  oracle::Rng rng(73);
  for (int iter = 0; iter < 150; ++iter) {
    const std::uint32_t sigma = 1 + static_cast<std::uint32_t>(rng.below(5));
    const Sequence a = rng.sequence(rng.below(14), sigma);
    const Sequence b = rng.sequence(rng.below(14), sigma);
    const Sequence p = rng.sequence(rng.below(20), sigma);
    const auto want = oracle::merlcs(a, b, p);
    for (unsigned cube : {1U, 2U, 3U}) {
      MerlcsCounters c;
      REQUIRE(merlcs_tabulated(a, b, p, MerlcsOptions{cube, 64}, &c) == want);
      if (!a.empty() && !b.empty() && !p.empty()) {
        CHECK(c.cubes == (a.size() / cube) * (b.size() / cube) * (p.size() / cube));
        CHECK(c.cubes + c.ragged_cubes ==
              oracle::ceil_div(a.size(), cube) * oracle::ceil_div(b.size(), cube) * oracle::ceil_div(p.size(), cube));
      }
    }
  }
}

TEST_CASE("CubeLut memoization matches direct evaluation") {
  CubeLut lut(1, {0}, {1}, 2);
  CHECK(lut.key_bits() == 7);
  for (std::uint64_t key = 0; key < (1U << 7); ++key) {
    if ((key >> 5) > 2) continue;
    CHECK(lut(key) == lut.compute(key));
    CHECK(lut(key) == lut.compute(key));
  }
  CHECK(lut.hits() > 0);
  CubeLut full(1, {0}, {0}, 1);
  full.fill_all();
  CHECK(full.entries() > 0);
  CHECK(full.entries() <= 1U << 7);
}
