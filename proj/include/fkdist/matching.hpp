#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fkdist/error.hpp"
#include "fkdist/systems.hpp"
#include "fkdist/word.hpp"

namespace fkdist {

/// (domain index, range index) of one matched pair.
using MatchPair = std::pair<std::size_t, std::size_t>;

/// Largest fit of an order-preserving partial bijection between two windows.
/// When present, `matched_pairs` holds a witness: |matched_pairs| == fit and
/// both coordinates strictly increase.
struct MatchResult {
  std::size_t fit = 0;
  std::size_t n = 0;
  std::optional<std::vector<MatchPair>> matched_pairs;
};

enum class Witness { skip, record };

/// Dense boolean relation between two index ranges.
class Relation {
public:
  Relation(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool operator()(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v = true) { cells_[i * cols_ + j] = v ? 1 : 0; }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<unsigned char> cells_;
};

/// Largest relation side accepted by max_fit_bruteforce.
inline constexpr std::size_t kBruteforceGuard = 14;

/// Exhaustive search over every order-preserving partial bijection. Oracle
/// only: refuses relations with a side above kBruteforceGuard.
std::size_t max_fit_bruteforce(const Relation& compat);

// ---------------------------------------------------------------------------
// Dynamic program over an arbitrary compatibility predicate

namespace detail {

/// Score table size below which witnesses come from a stored table; larger
/// problems are split with Hirschberg's divide and conquer.
inline constexpr std::size_t kTracebackCellLimit = std::size_t{1} << 22;

template <class Compat>
std::uint32_t forward_scores(const Compat& compat, std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1,
                             std::vector<std::uint32_t>& row) {
  const std::size_t m = j1 - j0;
  row.assign(m + 1, 0);
  for (std::size_t i = i0; i < i1; ++i) {
    std::uint32_t diag = 0;  // previous row, column j - 1
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t up = row[j];
      std::uint32_t best = std::max(up, row[j - 1]);
      if (compat(i, j0 + j - 1)) best = std::max(best, diag + 1);
      diag = up;
      row[j] = best;
    }
  }
  return row[m];
}

// Scores of suffix problems: row[j] = fit of rows [i0, i1) against cols [j0 + j, j1).
template <class Compat>
void backward_scores(const Compat& compat, std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1,
                     std::vector<std::uint32_t>& row) {
  const std::size_t m = j1 - j0;
  row.assign(m + 1, 0);
  for (std::size_t i = i1; i-- > i0;) {
    std::uint32_t diag = 0;  // previous row, column j + 1
    for (std::size_t j = m; j-- > 0;) {
      const std::uint32_t down = row[j];
      std::uint32_t best = std::max(down, row[j + 1]);
      if (compat(i, j0 + j)) best = std::max(best, diag + 1);
      diag = down;
      row[j] = best;
    }
  }
}

// Full-table traceback. Ties prefer the diagonal move, then advancing the
// domain index.
template <class Compat>
void traceback_block(const Compat& compat, std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1,
                     std::vector<MatchPair>& out) {
  const std::size_t rows = i1 - i0;
  const std::size_t cols = j1 - j0;
  const std::size_t stride = cols + 1;
  std::vector<std::uint32_t> table((rows + 1) * stride, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    for (std::size_t j = 1; j <= cols; ++j) {
      std::uint32_t best = std::max(table[(i - 1) * stride + j], table[i * stride + j - 1]);
      if (compat(i0 + i - 1, j0 + j - 1)) best = std::max(best, table[(i - 1) * stride + j - 1] + 1);
      table[i * stride + j] = best;
    }
  }
  std::vector<MatchPair> reversed;
  std::size_t i = rows;
  std::size_t j = cols;
  while (i > 0 && j > 0) {
    const std::uint32_t here = table[i * stride + j];
    if (here == 0) break;
    if (compat(i0 + i - 1, j0 + j - 1) && table[(i - 1) * stride + j - 1] + 1 == here) {
      reversed.emplace_back(i0 + i - 1, j0 + j - 1);
      --i;
      --j;
    } else if (table[(i - 1) * stride + j] == here) {
      --i;
    } else {
      --j;
    }
  }
  out.insert(out.end(), reversed.rbegin(), reversed.rend());
}

template <class Compat>
void hirschberg(const Compat& compat, std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1,
                std::size_t cell_limit, std::vector<MatchPair>& out) {
  if (i1 <= i0 || j1 <= j0) return;
  if ((i1 - i0) * (j1 - j0) <= cell_limit || i1 - i0 == 1) {
    traceback_block(compat, i0, i1, j0, j1, out);
    return;
  }
  const std::size_t mid = i0 + (i1 - i0) / 2;
  std::vector<std::uint32_t> top;
  std::vector<std::uint32_t> bottom;
  forward_scores(compat, i0, mid, j0, j1, top);
  backward_scores(compat, mid, i1, j0, j1, bottom);
  std::size_t split = 0;
  std::uint32_t best = 0;
  for (std::size_t k = 0; k <= j1 - j0; ++k) {
    if (top[k] + bottom[k] > best || k == 0) {
      best = top[k] + bottom[k];
      split = k;
    }
  }
  hirschberg(compat, i0, mid, j0, j0 + split, cell_limit, out);
  hirschberg(compat, mid, i1, j0 + split, j1, cell_limit, out);
}

}  // namespace detail

/// Longest-common-subsequence style dynamic program:
///   table(i, j) = max(table(i-1, j), table(i, j-1), table(i-1, j-1) + [compat(i-1, j-1)]).
/// Two rows of scores suffice for the fit. A witness costs a full table for
/// small problems and divide-and-conquer reconstruction beyond
/// `traceback_cell_limit` cells.
template <class Compat>
MatchResult max_fit_dp(const Compat& compat, std::size_t n_x, std::size_t n_z, Witness witness = Witness::skip,
                       std::size_t traceback_cell_limit = detail::kTracebackCellLimit) {
  MatchResult result;
  result.n = std::min(n_x, n_z);
  if (witness == Witness::skip) {
    std::vector<std::uint32_t> row;
    result.fit = detail::forward_scores(compat, 0, n_x, 0, n_z, row);
    return result;
  }
  std::vector<MatchPair> pairs;
  detail::hirschberg(compat, 0, n_x, 0, n_z, std::max<std::size_t>(traceback_cell_limit, 1), pairs);
  result.fit = pairs.size();
  result.matched_pairs = std::move(pairs);
  return result;
}

// ---------------------------------------------------------------------------
// Symbolic fast path

/// Dense ranks of the length-L blocks starting at positions [0, n) of x and
/// z, in one shared rank space ordered lexicographically by block content.
/// Both words must hold at least n + L - 1 symbols.
struct BlockRanks {
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> z;
  std::size_t rank_count = 0;
};

BlockRanks block_ranks(std::span<const Symbol> x, std::span<const Symbol> z, std::size_t n, std::size_t length);

/// Memory budget (in 64-bit words) for the per-rank match masks of the
/// bit-parallel kernel.
inline constexpr std::size_t kBitParallelMaskBudget = std::size_t{1} << 23;

/// LCS length of two rank sequences with the bit-vector recurrence
///   V <- (V + (V & M[c])) | (V & ~M[c]),
/// processing 64 cells per machine word. Returns nullopt when the match
/// masks for the distinct ranks of `a` would exceed `mask_budget` words.
std::optional<std::size_t> bit_parallel_lcs(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                             std::size_t rank_count,
                                             std::size_t mask_budget = kBitParallelMaskBudget);

/// Maximal fit of an (n, delta)-match under the shift metric, where
/// L = agreement_length(delta): position i of x is compatible with position
/// j of z iff x[i, i+L) == z[j, j+L). Requires |x|, |z| >= n + L.
MatchResult block_fit(std::span<const Symbol> x, std::span<const Symbol> z, std::size_t n, std::size_t length,
                      Witness witness = Witness::skip);

/// Same value as block_fit, computed by the generic dynamic program with a
/// direct block comparison. Reference path for the bit-parallel kernel.
MatchResult block_fit_dp(std::span<const Symbol> x, std::span<const Symbol> z, std::size_t n, std::size_t length,
                         Witness witness = Witness::skip);

// ---------------------------------------------------------------------------
// Geometric path

struct CircleMetric {
  double operator()(double a, double b) const noexcept { return circle_distance(a, b); }
};

/// True iff d < delta, with the comparison made robust at the threshold.
inline bool strictly_within(double distance, double delta) noexcept {
  return distance < delta - kGeometricTolerance;
}

/// Maximal fit of an (n, delta)-match between two point sequences under an
/// arbitrary metric.
template <class Point, class Metric = CircleMetric>
MatchResult geometric_fit(std::span<const Point> points_x, std::span<const Point> points_z, std::size_t n,
                          double delta, Metric metric = {}, Witness witness = Witness::skip) {
  if (points_x.size() < n || points_z.size() < n) {
    throw Error(ErrorCode::input_length, "geometric_fit: point sequences shorter than the window");
  }
  if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "geometric_fit: delta must be positive");
  const auto compat = [&](std::size_t i, std::size_t j) {
    return strictly_within(metric(points_x[i], points_z[j]), delta);
  };
  return max_fit_dp(compat, n, n, witness);
}

}  // namespace fkdist
