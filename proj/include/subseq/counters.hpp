#pragma once

#include <cstdint>

namespace subseq {

/// Instrumentation filled in by the block engines. Fields an engine does not
/// use stay zero.
struct EngineCounters {
  std::uint64_t blocks = 0;          ///< every block visited, ragged ones included
  std::uint64_t lut_lookups = 0;     ///< full blocks resolved by a stripe LUT
  std::uint64_t ragged_blocks = 0;   ///< partial blocks on the bottom/right edge, solved directly
  std::uint64_t ragged_cells = 0;    ///< DP cells inside ragged blocks
  std::uint64_t lut_entries = 0;     ///< LUT entries built (or held, for cached tables)
  std::uint64_t luts_built = 0;
  std::uint64_t sparse_lookups = 0;  ///< full blocks with <= K matches
  std::uint64_t dense_blocks = 0;    ///< full blocks with > K matches
  std::uint64_t matches = 0;         ///< r seen by the engine
  std::uint64_t lut_bytes = 0;       ///< size of the largest single LUT alive at once
  std::int64_t peak_aux_bytes = 0;   ///< high-water mark of tracked scratch storage
  double f_d = 0.0;                  ///< dense fraction over all classified blocks

  void merge(const EngineCounters& o) {
    blocks += o.blocks;
    lut_lookups += o.lut_lookups;
    ragged_blocks += o.ragged_blocks;
    ragged_cells += o.ragged_cells;
    lut_entries += o.lut_entries;
    luts_built += o.luts_built;
    sparse_lookups += o.sparse_lookups;
    dense_blocks += o.dense_blocks;
    matches += o.matches;
    if (o.lut_bytes > lut_bytes) lut_bytes = o.lut_bytes;
    if (o.peak_aux_bytes > peak_aux_bytes) peak_aux_bytes = o.peak_aux_bytes;
  }
};

}  // namespace subseq
