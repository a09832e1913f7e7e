#include "subseq/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace subseq {

namespace {

std::vector<Symbol> draw(std::mt19937_64& rng, std::size_t n, std::uint32_t sigma) {
  std::vector<Symbol> out(n);
  for (auto& s : out) s = static_cast<Symbol>(rng() % sigma);
  return out;
}

/// `count` distinct sorted positions in [0, n), by selection sampling.
std::vector<std::size_t> pick_positions(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < n && out.size() < count; ++i)
    if (rng() % (n - i) < count - out.size()) out.push_back(i);
  return out;
}

}  // namespace

Sequence random_sequence(std::size_t n, std::uint32_t sigma, std::uint64_t seed) {
  if (sigma == 0) throw std::invalid_argument("random_sequence: sigma must be positive");
  std::mt19937_64 rng(seed);
  return Sequence(draw(rng, n, sigma));
}

GeneratedInstance generate_instance(std::size_t n, std::size_t m, std::uint32_t sigma, std::uint64_t seed,
                                    std::size_t planted) {
  if (sigma == 0) throw std::invalid_argument("generate_instance: sigma must be positive");
  if (planted > std::min(n, m)) throw std::invalid_argument("generate_instance: planted length exceeds an input");
  std::mt19937_64 rng(seed);
  auto a = draw(rng, n, sigma);
  auto b = draw(rng, m, sigma);
  if (planted > 0) {
    const auto hidden = draw(rng, planted, sigma);
    const auto pa = pick_positions(rng, n, planted);
    const auto pb = pick_positions(rng, m, planted);
    for (std::size_t k = 0; k < planted; ++k) {
      a[pa[k]] = hidden[k];
      b[pb[k]] = hidden[k];
    }
  }
  return {Sequence(std::move(a)), Sequence(std::move(b)), planted};
}

}  // namespace subseq
