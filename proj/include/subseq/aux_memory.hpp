#pragma once

#include <cstddef>
#include <cstdint>
#include <new>
#include <vector>

namespace subseq {

/// Per-thread byte accounting for engine scratch storage.
struct AuxMemoryStats {
  std::int64_t current = 0;
  std::int64_t peak = 0;
};

AuxMemoryStats& aux_memory_stats() noexcept;

template <class T>
struct TrackingAllocator {
  using value_type = T;

  TrackingAllocator() noexcept = default;
  template <class U>
  TrackingAllocator(const TrackingAllocator<U>&) noexcept {}

  T* allocate(std::size_t count) {
    T* p = std::allocator<T>{}.allocate(count);
    auto& s = aux_memory_stats();
    s.current += static_cast<std::int64_t>(count * sizeof(T));
    if (s.current > s.peak) s.peak = s.current;
    return p;
  }

  void deallocate(T* p, std::size_t count) noexcept {
    aux_memory_stats().current -= static_cast<std::int64_t>(count * sizeof(T));
    std::allocator<T>{}.deallocate(p, count);
  }

  template <class U>
  friend bool operator==(const TrackingAllocator&, const TrackingAllocator<U>&) noexcept {
    return true;
  }
};

template <class T>
using aux_vector = std::vector<T, TrackingAllocator<T>>;

/// Measures the high-water mark of tracked allocations made on this thread
/// while the scope is alive, relative to the bytes live at entry.
class AuxMemoryScope {
 public:
  AuxMemoryScope() noexcept;
  ~AuxMemoryScope();
  AuxMemoryScope(const AuxMemoryScope&) = delete;
  AuxMemoryScope& operator=(const AuxMemoryScope&) = delete;

  [[nodiscard]] std::int64_t peak_bytes() const noexcept;

 private:
  std::int64_t baseline_;
  std::int64_t outer_peak_;
};

}  // namespace subseq
