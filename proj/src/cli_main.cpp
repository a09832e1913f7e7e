#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "subseq/cli.hpp"

namespace subseq::cli {

namespace {

struct CommonFlags {
  std::string engine = "auto";
  std::string format = "bytes";
  bool json = false;
  unsigned key_budget = kDefaultKeyBudget;
  std::optional<unsigned> x1, x2, y, b, k, cube_b;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

void add_common(CLI::App& app, CommonFlags& f, bool block_flags) {
  app.add_option("--engine", f.engine, "auto, naive, hs, tabulated or hybrid")
      ->envname("SUBSEQ_ENGINE")
      ->check(CLI::IsMember({"auto", "naive", "hs", "tabulated", "hybrid"}));
  app.add_option("--format", f.format, "bytes, ints or fasta-like")
      ->check(CLI::IsMember({"bytes", "ints", "fasta-like"}));
  app.add_flag("--json", f.json, "print the full run report as one JSON object");
  app.add_option("--key-budget", f.key_budget, "largest LUT key width in bits")
      ->envname("SUBSEQ_KEY_BUDGET")
      ->check(CLI::Range(1U, 64U));
  app.add_option("--seed", f.seed, "seed for generated data");
  if (block_flags) {
    app.add_option("--block-x1", f.x1, "stripe block width along A")->check(CLI::PositiveNumber);
    app.add_option("--block-x2", f.x2, "stripe block height along B")->check(CLI::PositiveNumber);
    app.add_option("--superblock-y", f.y, "superblock height, a multiple of x2")->check(CLI::PositiveNumber);
    app.add_option("--block-b", f.b, "hybrid block side")->check(CLI::PositiveNumber);
    app.add_option("--threshold-k", f.k, "hybrid sparse/dense match threshold")->check(CLI::PositiveNumber);
  }
}

RunConfig to_config(Problem problem, const CommonFlags& f) {
  RunConfig c;
  c.problem = problem;
  c.engine = f.engine;
  c.key_budget_bits = f.key_budget;
  c.block_x1 = f.x1;
  c.block_x2 = f.x2;
  c.superblock_y = f.y;
  c.block_b = f.b;
  c.threshold_k = f.k;
  c.cube_b = f.cube_b;
  c.threads = f.threads;
  return c;
}

std::vector<std::uint32_t> parse_sigma_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad sigma list: " + text);
    }
    if (used != item.size() || v == 0 || v > UINT32_MAX) throw UsageError("bad sigma list: " + text);
    out.push_back(static_cast<std::uint32_t>(v));
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Subsequence similarity via block tabulation"};
  app.require_subcommand(1);

  CommonFlags f;
  std::vector<std::string> files;
  std::uint32_t sigma = 0;

  auto* lcs = app.add_subcommand("lcs", "longest common subsequence length of A and B");
  add_common(*lcs, f, true);
  lcs->add_option("inputs", files, "files A and B")->required()->expected(2);

  auto* edit = app.add_subcommand("edit", "unit-cost edit distance between A and B");
  add_common(*edit, f, true);
  edit->add_option("inputs", files, "files A and B")->required()->expected(2);

  auto* lcts = app.add_subcommand("lcts", "transposition-invariant LCS over symbols below --sigma");
  add_common(*lcts, f, false);
  lcts->add_option("inputs", files, "files A and B")->required()->expected(2);
  lcts->add_option("--sigma", sigma, "alphabet size; every symbol must be below it")->required()->check(CLI::PositiveNumber);
  lcts->add_option("--threads", f.threads, "worker threads over transpositions")->check(CLI::PositiveNumber);

  auto* merlcs = app.add_subcommand("merlcs", "longest subsequence of P split between A and B");
  add_common(*merlcs, f, false);
  merlcs->add_option("inputs", files, "files A, B and P")->required()->expected(3);
  merlcs->add_option("--cube-b", f.cube_b, "cube side")->check(CLI::PositiveNumber);

  BenchConfig bc;
  std::string bench_sigmas = "2,4,16,256";
  std::string bench_engines = "naive,hs,tabulated,hybrid";
  std::string bench_problem = "lcs";
  std::string bench_corpus;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "benchmark engines on generated or corpus instances");
  add_common(*bench, f, false);
  bench->add_option("--n", bc.n, "length of A");
  bench->add_option("--m", bc.m, "length of B");
  bench->add_option("--sigmas", bench_sigmas, "comma-separated alphabet sizes");
  bench->add_option("--instances", bc.instances, "instances per alphabet size");
  bench->add_option("--planted", bc.planted, "length of a common subsequence planted in each instance");
  bench->add_option("--engines", bench_engines, "comma-separated engines; the first is the reference");
  bench->add_option("--problem", bench_problem, "lcs or edit")->check(CLI::IsMember({"lcs", "edit"}));
  bench->add_option("--jobs", bc.jobs, "worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--corpus", bench_corpus, "directory of input files, paired in name order");
  bench->add_flag("--no-timing", no_timing, "omit wall times so output is byte-identical across runs");

  auto* selftest = app.add_subcommand("selftest", "oracle-equivalence and LUT sweeps at reduced size");
  std::uint64_t selftest_seed = 1;
  selftest->add_option("--seed", selftest_seed, "seed for random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto format = *parse_format(f.format);
    if (bench->parsed()) {
      bc.problem = bench_problem == "edit" ? Problem::edit : Problem::lcs;
      bc.sigmas = parse_sigma_list(bench_sigmas);
      bc.engines = split_list(bench_engines);
      bc.seed = f.seed;
      bc.key_budget_bits = f.key_budget;
      bc.timing = !no_timing;
      bc.corpus_format = format;
      if (!bench_corpus.empty()) bc.corpus = bench_corpus;
      for (const auto& e : bc.engines)
        if (e != "auto" && e != "naive" && e != "hs" && e != "tabulated" && e != "hybrid")
          throw UsageError("unknown engine in --engines: " + e);
      return run_bench(bc, std::cout) ? 0 : 1;
    }
    if (selftest->parsed()) {
      bool ok = true;
      for (const auto& r : run_selftest(selftest_seed)) {
        std::cout << (r.ok() ? "PASS " : "FAIL ") << r.suite << " " << r.passed << "/" << r.total << "\n";
        ok = ok && r.ok();
      }
      return ok ? 0 : 1;
    }

    Problem problem = Problem::lcs;
    if (edit->parsed()) problem = Problem::edit;
    if (lcts->parsed()) problem = Problem::lcts;
    if (merlcs->parsed()) problem = Problem::merlcs;
    RunConfig config = to_config(problem, f);
    if (problem == Problem::lcts) config.sigma = sigma;

    const Sequence a = parse_input(files[0], format);
    const Sequence b = parse_input(files[1], format);
    std::optional<Sequence> p;
    if (problem == Problem::merlcs) p = parse_input(files[2], format);
    const RunReport report = run_similarity(config, a, b, p ? &*p : nullptr);
    if (f.json) std::cout << to_json(report) << "\n";
    else std::cout << report.result << "\n";
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace subseq::cli
