#include "subseq/aux_memory.hpp"

#include <algorithm>

namespace subseq {

AuxMemoryStats& aux_memory_stats() noexcept {
  thread_local AuxMemoryStats stats;
  return stats;
}

AuxMemoryScope::AuxMemoryScope() noexcept {
  auto& s = aux_memory_stats();
  baseline_ = s.current;
  outer_peak_ = s.peak;
  s.peak = s.current;
}

AuxMemoryScope::~AuxMemoryScope() {
  auto& s = aux_memory_stats();
  s.peak = std::max(outer_peak_, s.peak);
}

std::int64_t AuxMemoryScope::peak_bytes() const noexcept {
  return std::max<std::int64_t>(0, aux_memory_stats().peak - baseline_);
}

}  // namespace subseq
