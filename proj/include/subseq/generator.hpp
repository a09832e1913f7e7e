#pragma once

#include <cstdint>

#include "subseq/sequence.hpp"

namespace subseq {

struct GeneratedInstance {
  Sequence a;
  Sequence b;
  std::uint64_t planted = 0;  ///< length of a common subsequence hidden in both; LLCS >= planted
};

/// Uniform symbols below sigma from a seeded mt19937_64. When planted > 0, a
/// random string of that length is written into both outputs at random
/// increasing positions. Identical arguments always give identical output.
GeneratedInstance generate_instance(std::size_t n, std::size_t m, std::uint32_t sigma, std::uint64_t seed,
                                    std::size_t planted = 0);

/// Uniform random sequence of length n over [0, sigma).
Sequence random_sequence(std::size_t n, std::uint32_t sigma, std::uint64_t seed);

}  // namespace subseq
