#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "fkdist/error.hpp"
#include "fkdist/matching.hpp"

namespace fkdist {

namespace {

using RankVec = std::vector<std::uint32_t>;

struct RankPair {
  RankVec x;
  RankVec z;
};

// Replaces 64-bit keys of both sequences by dense ranks in a shared space,
// preserving key order.
std::size_t densify(const std::vector<std::uint64_t>& keys_x, const std::vector<std::uint64_t>& keys_z,
                    RankPair& out) {
  std::vector<std::uint64_t> all;
  all.reserve(keys_x.size() + keys_z.size());
  all.insert(all.end(), keys_x.begin(), keys_x.end());
  all.insert(all.end(), keys_z.begin(), keys_z.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const auto rank_of = [&](std::uint64_t key) {
    return static_cast<std::uint32_t>(std::lower_bound(all.begin(), all.end(), key) - all.begin());
  };
  out.x.resize(keys_x.size());
  out.z.resize(keys_z.size());
  std::transform(keys_x.begin(), keys_x.end(), out.x.begin(), rank_of);
  std::transform(keys_z.begin(), keys_z.end(), out.z.begin(), rank_of);
  return all.size();
}

// Ranks of blocks of length len_a + len_b from ranks of the two halves.
std::size_t combine(const RankPair& head, std::size_t len_a, const RankPair& tail, std::size_t count, RankPair& out) {
  std::vector<std::uint64_t> kx(count);
  std::vector<std::uint64_t> kz(count);
  for (std::size_t i = 0; i < count; ++i) {
    kx[i] = (std::uint64_t{head.x[i]} << 32) | tail.x[i + len_a];
    kz[i] = (std::uint64_t{head.z[i]} << 32) | tail.z[i + len_a];
  }
  return densify(kx, kz, out);
}

}  // namespace

BlockRanks block_ranks(std::span<const Symbol> x, std::span<const Symbol> z, std::size_t n, std::size_t length) {
  if (length == 0) {
    return BlockRanks{RankVec(n, 0), RankVec(n, 0), n == 0 ? 0u : 1u};
  }
  const std::size_t total = n + length - 1;
  if (x.size() < total || z.size() < total) {
    throw Error(ErrorCode::input_length, "block_ranks: words shorter than n + L - 1");
  }
  if (n == 0) return {};

  // Level k holds ranks of blocks of length 2^k at positions [0, total - 2^k].
  std::vector<RankPair> levels(1);
  std::size_t rank_count = densify(std::vector<std::uint64_t>(x.begin(), x.begin() + total),
                                   std::vector<std::uint64_t>(z.begin(), z.begin() + total), levels[0]);
  for (std::size_t span = 1; span * 2 <= length; span *= 2) {
    RankPair next;
    rank_count = combine(levels.back(), span, levels.back(), total - 2 * span + 1, next);
    levels.push_back(std::move(next));
  }

  // Assemble the binary expansion of `length`, longest pieces first.
  RankPair current;
  std::size_t current_len = 0;
  for (std::size_t k = levels.size(); k-- > 0;) {
    const std::size_t piece = std::size_t{1} << k;
    if ((length & piece) == 0) continue;
    if (current_len == 0) {
      current = levels[k];
      rank_count = 0;
      for (auto r : current.x) rank_count = std::max<std::size_t>(rank_count, r + 1);
      for (auto r : current.z) rank_count = std::max<std::size_t>(rank_count, r + 1);
    } else {
      RankPair next;
      rank_count = combine(current, current_len, levels[k], total - (current_len + piece) + 1, next);
      current = std::move(next);
    }
    current_len += piece;
  }

  current.x.resize(n);
  current.z.resize(n);
  return BlockRanks{std::move(current.x), std::move(current.z), rank_count};
}

}  // namespace fkdist
