#include "subseq/sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace subseq {

namespace {

std::uint64_t bound_of(std::span<const Symbol> symbols) {
  if (symbols.empty()) return 0;
  return std::uint64_t{*std::max_element(symbols.begin(), symbols.end())} + 1;
}

/// CSR layout of the positions of every symbol in `s` (0-based positions).
struct Occurrences {
  std::vector<std::uint32_t> start;
  std::vector<std::uint32_t> positions;

  Occurrences(std::span<const Symbol> s, std::uint32_t sigma) : start(sigma + 1, 0), positions(s.size()) {
    for (Symbol c : s) ++start[c + 1];
    for (std::uint32_t c = 0; c < sigma; ++c) start[c + 1] += start[c];
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::uint32_t i = 0; i < s.size(); ++i) positions[fill[s[i]]++] = i;
  }

  [[nodiscard]] std::span<const std::uint32_t> of(Symbol c) const {
    return std::span(positions).subspan(start[c], start[c + 1] - start[c]);
  }
};

}  // namespace

Sequence::Sequence(std::vector<Symbol> symbols) : symbols_(std::move(symbols)), bound_(bound_of(symbols_)) {}

Sequence::Sequence(std::initializer_list<Symbol> symbols) : Sequence(std::vector<Symbol>(symbols)) {}

Sequence Sequence::from_bytes(std::string_view bytes) {
  std::vector<Symbol> out;
  out.reserve(bytes.size());
  for (char c : bytes) out.push_back(static_cast<unsigned char>(c));
  return Sequence(std::move(out));
}

Sequence Sequence::slice(std::size_t first, std::size_t count) const {
  first = std::min(first, symbols_.size());
  count = std::min(count, symbols_.size() - first);
  return Sequence(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(first),
                                      symbols_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

NormalizedPair normalize_alphabet(const Sequence& a, const Sequence& b) {
  auto t = normalize_alphabet(a, b, Sequence{});
  return {std::move(t.a), std::move(t.b), t.sigma};
}

NormalizedTriple normalize_alphabet(const Sequence& a, const Sequence& b, const Sequence& p) {
  std::vector<Symbol> distinct;
  distinct.reserve(a.size() + b.size() + p.size());
  for (const Sequence* s : {&a, &b, &p}) distinct.insert(distinct.end(), s->begin(), s->end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  auto remap = [&distinct](const Sequence& s) {
    std::vector<Symbol> out;
    out.reserve(s.size());
    for (Symbol c : s)
      out.push_back(static_cast<Symbol>(std::lower_bound(distinct.begin(), distinct.end(), c) - distinct.begin()));
    return Sequence(std::move(out));
  };
  NormalizedTriple r;
  r.a = remap(a);
  r.b = remap(b);
  r.p = remap(p);
  r.sigma = static_cast<std::uint32_t>(distinct.size());
  return r;
}

AlphabetStats alphabet_stats(const Sequence& a, const Sequence& b, std::uint32_t sigma) {
  if (a.alphabet_bound() > sigma || b.alphabet_bound() > sigma)
    throw std::invalid_argument("alphabet_stats: symbol outside the declared alphabet");
  AlphabetStats s;
  s.histogram_a.assign(sigma, 0);
  s.histogram_b.assign(sigma, 0);
  for (Symbol c : a) ++s.histogram_a[c];
  for (Symbol c : b) ++s.histogram_b[c];
  for (std::uint32_t c = 0; c < sigma; ++c) s.match_count_r += s.histogram_a[c] * s.histogram_b[c];
  return s;
}

std::uint64_t count_matches(const Sequence& a, const Sequence& b) {
  if (a.empty() || b.empty()) return 0;
  // Dense inputs use a flat histogram directly; anything else is renumbered first.
  const std::uint64_t bound = std::max(a.alphabet_bound(), b.alphabet_bound());
  if (bound <= 4 * (a.size() + b.size()) + 256)
    return alphabet_stats(a, b, static_cast<std::uint32_t>(bound)).match_count_r;
  const auto norm = normalize_alphabet(a, b);
  return alphabet_stats(norm.a, norm.b, norm.sigma).match_count_r;
}

MatchIndex::MatchIndex(std::size_t n, std::size_t m, std::size_t block_rows, std::size_t block_cols,
                       std::vector<std::size_t> offsets, std::vector<LocalMatch> matches)
    : n_(n),
      m_(m),
      block_rows_(block_rows),
      block_cols_(block_cols),
      stripes_((m + block_rows - 1) / block_rows),
      blocks_per_stripe_((n + block_cols - 1) / block_cols),
      offsets_(std::move(offsets)),
      matches_(std::move(matches)) {
  if (offsets_.size() != block_count() + 1) throw std::invalid_argument("MatchIndex: offsets size mismatch");
}

std::size_t MatchIndex::block_height(std::size_t stripe) const noexcept {
  return std::min(block_rows_, m_ - stripe * block_rows_);
}

std::size_t MatchIndex::block_width(std::size_t column) const noexcept {
  return std::min(block_cols_, n_ - column * block_cols_);
}

std::span<const LocalMatch> MatchIndex::block(std::size_t stripe, std::size_t column) const {
  return block(stripe * blocks_per_stripe_ + column);
}

std::span<const LocalMatch> MatchIndex::block(std::size_t flat_index) const {
  if (flat_index >= block_count()) throw std::out_of_range("MatchIndex::block");
  return std::span(matches_).subspan(offsets_[flat_index], offsets_[flat_index + 1] - offsets_[flat_index]);
}

MatchIndex enumerate_block_matches(const Sequence& a, const Sequence& b, std::size_t block_rows,
                                   std::size_t block_cols) {
  if (block_rows == 0 || block_cols == 0) throw std::invalid_argument("enumerate_block_matches: zero block size");
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const auto norm = normalize_alphabet(a, b);
  const Occurrences occ(norm.a.symbols(), norm.sigma);

  const std::size_t stripes = (m + block_rows - 1) / block_rows;
  const std::size_t per_stripe = (n + block_cols - 1) / block_cols;
  std::vector<std::size_t> offsets(stripes * per_stripe + 1, 0);
  std::vector<LocalMatch> matches;

  std::vector<std::size_t> fill(per_stripe);
  for (std::size_t s = 0; s < stripes; ++s) {
    const std::size_t j0 = s * block_rows;
    const std::size_t j1 = std::min(m, j0 + block_rows);
    const std::size_t base = s * per_stripe;
    // Counting sort by block keeps the (row, col) scan order inside each block.
    for (std::size_t j = j0; j < j1; ++j)
      for (std::uint32_t i : occ.of(norm.b[j])) ++offsets[base + i / block_cols + 1];
    std::size_t running = matches.size();
    for (std::size_t k = 0; k < per_stripe; ++k) {
      fill[k] = running;
      running += offsets[base + k + 1];
      offsets[base + k + 1] = running;
    }
    matches.resize(running);
    for (std::size_t j = j0; j < j1; ++j)
      for (std::uint32_t i : occ.of(norm.b[j])) {
        const std::size_t k = i / block_cols;
        matches[fill[k]++] = LocalMatch{static_cast<std::uint32_t>(j - j0 + 1),
                                        static_cast<std::uint32_t>(i - k * block_cols + 1)};
      }
  }
  return MatchIndex(n, m, block_rows, block_cols, std::move(offsets), std::move(matches));
}

}  // namespace subseq
