#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "subseq/sequence.hpp"
#include "subseq/tabulation.hpp"

namespace subseq::cli {

enum class InputFormat { bytes, ints, fasta_like };

/// Thrown for malformed input files; maps to exit status 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown for flag combinations that make no sense; maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<InputFormat> parse_format(std::string_view name);

Sequence parse_text(std::string_view text, InputFormat format);
Sequence parse_input(const std::filesystem::path& path, InputFormat format);

enum class Problem { lcs, edit, lcts, merlcs };
std::string_view to_string(Problem p) noexcept;

struct RunReport {
  std::string problem;
  std::string engine;  ///< engine that actually ran (auto is resolved)
  std::int64_t result = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t u = 0;
  std::uint64_t sigma = 0;  ///< distinct symbols over all inputs
  std::uint64_t r = 0;
  std::uint64_t blocks = 0;
  std::uint64_t lut_entries = 0;
  std::uint64_t sparse_lookups = 0;
  std::uint64_t dense_blocks = 0;
  double f_d = 0.0;
  double wall_time_s = 0.0;
  std::int64_t peak_aux_bytes = 0;
  std::uint64_t ragged_cells = 0;
  std::uint64_t lut_lookups = 0;
};

/// One flat JSON object on a single line.
std::string to_json(const RunReport& report, bool with_timing = true);

struct RunConfig {
  Problem problem = Problem::lcs;
  std::string engine = "auto";
  unsigned key_budget_bits = kDefaultKeyBudget;
  std::optional<unsigned> block_x1;
  std::optional<unsigned> block_x2;
  std::optional<unsigned> superblock_y;
  std::optional<unsigned> block_b;
  std::optional<unsigned> threshold_k;
  std::optional<unsigned> cube_b;
  std::optional<std::uint32_t> sigma;  ///< LCTS alphabet size
  unsigned threads = 1;
};

/// Runs one computation. Throws UsageError for engine/flag combinations that
/// do not apply to the problem.
RunReport run_similarity(const RunConfig& config, const Sequence& a, const Sequence& b, const Sequence* p = nullptr);

struct BenchConfig {
  Problem problem = Problem::lcs;
  std::size_t n = 1000;
  std::size_t m = 1000;
  std::vector<std::uint32_t> sigmas{2, 4, 16, 256};
  std::size_t instances = 1;
  std::size_t planted = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> engines{"naive", "hs", "tabulated", "hybrid"};
  unsigned key_budget_bits = kDefaultKeyBudget;
  unsigned jobs = 1;
  bool timing = true;
  std::optional<std::filesystem::path> corpus;
  InputFormat corpus_format = InputFormat::bytes;
};

/// Writes one JSON line per (instance, engine). Returns false if any engine
/// disagreed with the first engine of its instance or missed the planted bound.
bool run_bench(const BenchConfig& config, std::ostream& out);

struct SelftestResult {
  std::string suite;
  std::uint64_t passed = 0;
  std::uint64_t total = 0;
  [[nodiscard]] bool ok() const noexcept { return passed == total; }
};

std::vector<SelftestResult> run_selftest(std::uint64_t seed = 1);

/// Full command-line entry point; returns the process exit status.
int run_cli(int argc, char** argv);

}  // namespace subseq::cli
