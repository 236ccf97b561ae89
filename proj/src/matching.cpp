#include "fkdist/matching.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace fkdist {

namespace {

// Every order-preserving partial bijection is enumerated: row i is either
// left unmatched or paired with some compatible column after the previous one.
std::size_t enumerate_matches(const Relation& compat, std::size_t row, std::size_t first_col) {
  if (row == compat.rows() || first_col == compat.cols()) return 0;
  std::size_t best = enumerate_matches(compat, row + 1, first_col);
  for (std::size_t col = first_col; col < compat.cols(); ++col) {
    if (compat(row, col)) best = std::max(best, 1 + enumerate_matches(compat, row + 1, col + 1));
  }
  return best;
}

void require_block_input(std::span<const Symbol> x, std::span<const Symbol> z, std::size_t n, std::size_t length) {
  if (x.size() < n + length || z.size() < n + length) {
    throw Error(ErrorCode::input_length, "block_fit: words must hold at least n + L = " +
                                             std::to_string(n + length) + " symbols");
  }
}

MatchResult identity_match(std::size_t n, Witness witness) {
  MatchResult result{n, n, std::nullopt};
  if (witness == Witness::record) {
    std::vector<MatchPair> pairs(n);
    for (std::size_t i = 0; i < n; ++i) pairs[i] = {i, i};
    result.matched_pairs = std::move(pairs);
  }
  return result;
}

}  // namespace

std::size_t max_fit_bruteforce(const Relation& compat) {
  if (compat.rows() > kBruteforceGuard || compat.cols() > kBruteforceGuard) {
    throw Error(ErrorCode::guard_exceeded, "max_fit_bruteforce: relation larger than " +
                                               std::to_string(kBruteforceGuard) + " refused");
  }
  return enumerate_matches(compat, 0, 0);
}

MatchResult block_fit(std::span<const Symbol> x, std::span<const Symbol> z, std::size_t n, std::size_t length,
                      Witness witness) {
  require_block_input(x, z, n, length);
  if (length == 0) return identity_match(n, witness);

  const BlockRanks ranks = block_ranks(x, z, n, length);
  if (witness == Witness::skip) {
    if (auto fit = bit_parallel_lcs(ranks.x, ranks.z, ranks.rank_count)) {
      return MatchResult{*fit, n, std::nullopt};
    }
  }
  const auto compat = [&](std::size_t i, std::size_t j) { return ranks.x[i] == ranks.z[j]; };
  return max_fit_dp(compat, n, n, witness);
}

MatchResult block_fit_dp(std::span<const Symbol> x, std::span<const Symbol> z, std::size_t n, std::size_t length,
                         Witness witness) {
  require_block_input(x, z, n, length);
  const auto compat = [&](std::size_t i, std::size_t j) {
    return std::equal(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i + length),
                      z.begin() + static_cast<std::ptrdiff_t>(j));
  };
  return max_fit_dp(compat, n, n, witness);
}

}  // namespace fkdist
