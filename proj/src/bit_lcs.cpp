#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "fkdist/matching.hpp"

namespace fkdist {

std::optional<std::size_t> bit_parallel_lcs(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                             std::size_t rank_count, std::size_t mask_budget) {
  const std::size_t m = a.size();
  if (m == 0 || b.empty()) return 0;
  const std::size_t words = (m + 63) / 64;

  // One mask per rank that actually occurs in `a`; other ranks never match.
  std::vector<std::int32_t> slot(rank_count, -1);
  std::size_t slots = 0;
  for (std::uint32_t r : a) {
    if (r >= rank_count) throw Error(ErrorCode::invalid_argument, "bit_parallel_lcs: rank out of range");
    if (slot[r] < 0) slot[r] = static_cast<std::int32_t>(slots++);
  }
  if (slots > mask_budget / words) return std::nullopt;

  std::vector<std::uint64_t> masks(slots * words, 0);
  for (std::size_t i = 0; i < m; ++i) {
    masks[static_cast<std::size_t>(slot[a[i]]) * words + i / 64] |= std::uint64_t{1} << (i % 64);
  }

  // Zero bits of V mark the positions where the LCS score steps up.
  std::vector<std::uint64_t> v(words, ~std::uint64_t{0});
  for (std::uint32_t c : b) {
    if (c >= rank_count || slot[c] < 0) continue;
    const std::uint64_t* mask = masks.data() + static_cast<std::size_t>(slot[c]) * words;
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t vw = v[w];
      const std::uint64_t u = vw & mask[w];
      const std::uint64_t partial = vw + u;
      const std::uint64_t sum = partial + carry;
      carry = static_cast<std::uint64_t>(partial < vw) | static_cast<std::uint64_t>(sum < partial);
      v[w] = sum | (vw & ~mask[w]);
    }
  }

  std::size_t ones = 0;
  for (std::size_t w = 0; w + 1 < words; ++w) ones += static_cast<std::size_t>(std::popcount(v[w]));
  const std::size_t tail_bits = m - 64 * (words - 1);
  const std::uint64_t tail_mask = tail_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail_bits) - 1;
  ones += static_cast<std::size_t>(std::popcount(v[words - 1] & tail_mask));
  return m - ones;
}

}  // namespace fkdist
