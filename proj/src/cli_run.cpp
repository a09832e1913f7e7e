#include <charconv>
#include <chrono>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "subseq/cli.hpp"
#include "subseq/dp_reference.hpp"
#include "subseq/sparse_hybrid.hpp"
#include "subseq/variants.hpp"

namespace subseq::cli {

std::optional<InputFormat> parse_format(std::string_view name) {
  if (name == "bytes") return InputFormat::bytes;
  if (name == "ints") return InputFormat::ints;
  if (name == "fasta-like") return InputFormat::fasta_like;
  return std::nullopt;
}

Sequence parse_text(std::string_view text, InputFormat format) {
  switch (format) {
    case InputFormat::bytes:
      return Sequence::from_bytes(text);
    case InputFormat::ints: {
      std::vector<Symbol> out;
      std::size_t pos = 0;
      auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; };
      while (pos < text.size()) {
        while (pos < text.size() && is_space(text[pos])) ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && !is_space(text[pos])) ++pos;
        if (start == pos) break;
        const std::string_view token = text.substr(start, pos - start);
        std::uint64_t value = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec == std::errc::result_out_of_range || (ec == std::errc{} && value > UINT32_MAX))
          throw InputError("symbol does not fit in 32 bits: " + std::string(token));
        if (ec != std::errc{} || end != token.data() + token.size())
          throw InputError("malformed integer token: " + std::string(token));
        out.push_back(static_cast<Symbol>(value));
      }
      return Sequence(std::move(out));
    }
    case InputFormat::fasta_like: {
      std::string body;
      std::size_t pos = 0;
      while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() != '>') body.append(line);
        pos = eol + 1;
      }
      return Sequence::from_bytes(body);
    }
  }
  throw InputError("unknown input format");
}

Sequence parse_input(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_text(text, format);
}

std::string_view to_string(Problem p) noexcept {
  switch (p) {
    case Problem::lcs: return "lcs";
    case Problem::edit: return "edit";
    case Problem::lcts: return "lcts";
    case Problem::merlcs: return "merlcs";
  }
  return "lcs";
}

std::string to_json(const RunReport& r, bool with_timing) {
  nlohmann::ordered_json j;
  j["problem"] = r.problem;
  j["engine"] = r.engine;
  j["result"] = r.result;
  j["n"] = r.n;
  j["m"] = r.m;
  j["u"] = r.u;
  j["sigma"] = r.sigma;
  j["r"] = r.r;
  j["blocks"] = r.blocks;
  j["lut_entries"] = r.lut_entries;
  j["sparse_lookups"] = r.sparse_lookups;
  j["dense_blocks"] = r.dense_blocks;
  j["f_d"] = r.f_d;
  if (with_timing) j["wall_time_s"] = r.wall_time_s;
  j["peak_aux_bytes"] = r.peak_aux_bytes;
  j["ragged_cells"] = r.ragged_cells;
  return j.dump();
}

namespace {

const std::vector<std::string_view> kEngines{"auto", "naive", "hs", "tabulated", "hybrid"};

void check_flags(const RunConfig& c) {
  if (std::find(kEngines.begin(), kEngines.end(), c.engine) == kEngines.end())
    throw UsageError("unknown engine: " + c.engine);
  const bool tab_flags = c.block_x1 || c.block_x2 || c.superblock_y;
  const bool hyb_flags = c.block_b || c.threshold_k;
  if (tab_flags && c.engine != "tabulated" && c.engine != "auto")
    throw UsageError("--block-x1/--block-x2/--superblock-y apply to the tabulated engine only");
  if (hyb_flags && c.engine != "hybrid" && c.engine != "auto")
    throw UsageError("--block-b/--threshold-k apply to the hybrid engine only");
  if (tab_flags && hyb_flags) throw UsageError("tabulated and hybrid block flags cannot be combined");
  if (c.cube_b && c.problem != Problem::merlcs) throw UsageError("--cube-b applies to merlcs only");
  if (c.problem == Problem::merlcs && (tab_flags || hyb_flags))
    throw UsageError("merlcs takes --cube-b, not stripe or hybrid block flags");
  if (c.problem == Problem::merlcs && (c.engine == "hs" || c.engine == "hybrid"))
    throw UsageError("merlcs supports engines auto, naive and tabulated");
  if (c.problem == Problem::lcts && c.engine == "hs") throw UsageError("lcts supports engines auto, naive, tabulated, hybrid");
  if (c.problem == Problem::lcts && !c.sigma) throw UsageError("lcts requires --sigma");
}

TabulationParams tabulation_params(const RunConfig& c, std::size_t n, std::size_t m, DpKind kind) {
  TabulationParams p = choose_params(n, m, c.key_budget_bits, kind);
  if (c.block_x1) p.x1 = *c.block_x1;
  if (c.block_x2) p.x2 = *c.block_x2;
  if (c.superblock_y) p.y = *c.superblock_y;
  else if (c.block_x2) p.y = std::max(p.x2, p.y / p.x2 * p.x2);
  try {
    p.validate(kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

HybridParams hybrid_params(const RunConfig& c, std::size_t n, std::size_t m, DpKind kind) {
  HybridParams p = choose_hybrid_params(n, m, c.key_budget_bits, kind);
  if (c.block_b) p.b = *c.block_b;
  if (c.threshold_k) p.k = *c.threshold_k;
  try {
    p.validate(kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

void copy_counters(const EngineCounters& c, RunReport& r) {
  r.blocks = c.blocks;
  r.lut_entries = c.lut_entries;
  r.sparse_lookups = c.sparse_lookups;
  r.dense_blocks = c.dense_blocks;
  r.f_d = c.f_d;
  r.peak_aux_bytes = c.peak_aux_bytes;
  r.ragged_cells = c.ragged_cells;
  r.lut_lookups = c.lut_lookups;
}

}  // namespace

RunReport run_similarity(const RunConfig& c, const Sequence& a, const Sequence& b, const Sequence* p) {
  check_flags(c);
  if (c.problem == Problem::merlcs && p == nullptr) throw UsageError("merlcs needs three inputs");

  RunReport report;
  report.problem = std::string(to_string(c.problem));
  report.n = a.size();
  report.m = b.size();
  report.u = p ? p->size() : 0;
  report.sigma = p ? normalize_alphabet(a, b, *p).sigma : normalize_alphabet(a, b).sigma;
  report.r = count_matches(a, b);

  std::string engine = c.engine;
  if (engine == "auto" && (c.problem == Problem::lcs || c.problem == Problem::edit)) {
    if (c.block_x1 || c.block_x2 || c.superblock_y) engine = "tabulated";
    else if (c.block_b || c.threshold_k) engine = "hybrid";
    else engine = std::string(to_string(recommend_engine(a.size(), b.size(), report.r, report.sigma)));
  }
  // Edit distance has no sparse-DP baseline; the sparse band goes to the hybrid engine.
  if (c.problem == Problem::edit && engine == "hs") engine = "hybrid";

  EngineCounters counters;
  const auto start = std::chrono::steady_clock::now();
  switch (c.problem) {
    case Problem::lcs:
      if (engine == "naive") report.result = lcs_naive(a, b);
      else if (engine == "hs") report.result = hunt_szymanski(a, b);
      else if (engine == "tabulated") report.result = lcs_tabulated(a, b, tabulation_params(c, a.size(), b.size(), DpKind::lcs), &counters);
      else report.result = lcs_hybrid(a, b, hybrid_params(c, a.size(), b.size(), DpKind::lcs), &counters);
      break;
    case Problem::edit:
      if (engine == "naive") report.result = edit_distance_naive(a, b);
      else if (engine == "tabulated") report.result = edit_distance_tabulated(a, b, tabulation_params(c, a.size(), b.size(), DpKind::edit), &counters);
      else report.result = edit_distance_hybrid(a, b, hybrid_params(c, a.size(), b.size(), DpKind::edit), &counters);
      break;
    case Problem::lcts: {
      LctsOptions options;
      options.key_budget_bits = c.key_budget_bits;
      options.threads = c.threads;
      if (engine == "naive") options.mode = LctsMode::all_naive;
      else if (engine == "tabulated") options.mode = LctsMode::all_tabulated;
      else options.mode = LctsMode::automatic;
      const LctsReport lr = lcts_run(a, b, *c.sigma, options);
      report.result = lr.result;
      counters = lr.counters;
      if (engine == "auto" || engine == "hybrid") engine = "auto";
      break;
    }
    case Problem::merlcs:
      if (engine == "naive") {
        report.result = merlcs_naive(a, b, *p);
      } else {
        engine = "tabulated";
        MerlcsOptions options;
        if (c.cube_b) options.cube_b = *c.cube_b;
        MerlcsCounters mc;
        try {
          report.result = merlcs_tabulated(a, b, *p, options, &mc);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        counters.blocks = mc.cubes + mc.ragged_cubes;
        counters.lut_entries = mc.lut_entries;
        counters.peak_aux_bytes = mc.peak_aux_bytes;
      }
      break;
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.engine = engine;
  copy_counters(counters, report);
  return report;
}

}  // namespace subseq::cli
