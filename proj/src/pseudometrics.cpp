#include "fkdist/pseudometrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fkdist/error.hpp"

namespace fkdist {

namespace {

void require_horizon(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "horizon n must be at least 1");
}

void require_grid_step(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw Error(ErrorCode::invalid_grid, "grid_step must lie in (0, 1]");
}

void require_compatible(const OrbitSource& x, const OrbitSource& z) {
  if (x.is_symbolic() != z.is_symbolic()) {
    throw Error(ErrorCode::incompatible_sources, "cannot compare a symbolic source with a geometric one");
  }
}

}  // namespace

std::size_t lcs_length(std::span<const Symbol> u, std::span<const Symbol> w) {
  if (u.empty() || w.empty()) return 0;
  std::vector<Symbol> alphabet(u.begin(), u.end());
  alphabet.insert(alphabet.end(), w.begin(), w.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  const auto rank = [&](Symbol s) {
    return static_cast<std::uint32_t>(std::lower_bound(alphabet.begin(), alphabet.end(), s) - alphabet.begin());
  };
  std::vector<std::uint32_t> ru(u.size());
  std::vector<std::uint32_t> rw(w.size());
  std::transform(u.begin(), u.end(), ru.begin(), rank);
  std::transform(w.begin(), w.end(), rw.begin(), rank);
  if (auto fit = bit_parallel_lcs(ru, rw, alphabet.size())) return *fit;
  const auto compat = [&](std::size_t i, std::size_t j) { return ru[i] == rw[j]; };
  return max_fit_dp(compat, ru.size(), rw.size()).fit;
}

double fbar_word(std::span<const Symbol> u, std::span<const Symbol> w) {
  if (u.size() != w.size()) {
    throw Error(ErrorCode::length_mismatch, "fbar_word: words of length " + std::to_string(u.size()) + " and " +
                                                std::to_string(w.size()));
  }
  require_horizon(u.size());
  // Deleted count over n, so rational values are correctly rounded.
  return static_cast<double>(u.size() - lcs_length(u, w)) / static_cast<double>(u.size());
}

// ---------------------------------------------------------------------------

DeltaGrid::DeltaGrid(double step, double diameter) : step_(step) {
  require_grid_step(step);
  if (!(diameter > 0.0)) throw Error(ErrorCode::invalid_grid, "DeltaGrid: diameter must be positive");
  auto count = static_cast<std::size_t>(std::floor(diameter / step));
  while (static_cast<double>(count + 1) * step <= diameter) ++count;
  while (count > 0 && static_cast<double>(count) * step > diameter) --count;
  points_.reserve(count + 1);
  for (std::size_t k = 1; k <= count + 1; ++k) points_.push_back(static_cast<double>(k) * step);
}

// ---------------------------------------------------------------------------

WindowPair::WindowPair(const OrbitSource& x, const OrbitSource& z, std::size_t n, std::size_t lookahead)
    : n_(n), lookahead_(lookahead), symbolic_(x.is_symbolic()) {
  require_horizon(n);
  require_compatible(x, z);
  if (symbolic_) {
    x_word_ = orbit_word(x, 0, n + lookahead);
    z_word_ = orbit_word(z, 0, n + lookahead);
    common_run_.assign(n, 0);
    std::size_t run = 0;
    for (std::size_t i = n + lookahead; i-- > 0;) {
      run = x_word_[i] == z_word_[i] ? std::min(run + 1, lookahead) : 0;
      if (i < n) common_run_[i] = run;
    }
  } else {
    x_points_ = orbit_points(x, 0, n);
    z_points_ = orbit_points(z, 0, n);
  }
}

std::size_t WindowPair::length_for(double delta) const {
  const std::size_t length = agreement_length(delta);
  if (length > lookahead_) {
    throw Error(ErrorCode::invalid_argument, "WindowPair: delta needs agreement length " + std::to_string(length) +
                                                 " beyond the materialized lookahead " + std::to_string(lookahead_));
  }
  return length;
}

MatchResult WindowPair::fit(double delta, Witness witness) const {
  if (symbolic_) {
    const std::size_t length = length_for(delta);
    return block_fit(x_word_, z_word_, n_, length, witness);
  }
  return geometric_fit<double>(x_points_, z_points_, n_, delta, CircleMetric{}, witness);
}

double WindowPair::fbar(double delta) const {
  return static_cast<double>(n_ - fit(delta).fit) / static_cast<double>(n_);
}

std::size_t WindowPair::far_count(double delta) const {
  std::size_t far = 0;
  if (symbolic_) {
    const std::size_t length = length_for(delta);
    for (std::size_t run : common_run_) far += run < length ? 1 : 0;
  } else {
    if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "far_count: delta must be positive");
    for (std::size_t i = 0; i < n_; ++i) {
      far += strictly_within(circle_distance(x_points_[i], z_points_[i]), delta) ? 0 : 1;
    }
  }
  return far;
}

double WindowPair::pointwise_distance(std::size_t i) const {
  if (symbolic_) {
    const std::size_t run = common_run_.at(i);
    return run >= lookahead_ ? 0.0 : std::ldexp(1.0, -static_cast<int>(run));
  }
  return circle_distance(x_points_.at(i), z_points_.at(i));
}

// ---------------------------------------------------------------------------

double fbar_n_delta(const OrbitSource& x, const OrbitSource& z, std::size_t n, double delta) {
  require_compatible(x, z);
  const std::size_t lookahead = x.is_symbolic() ? agreement_length(delta) : 0;
  return WindowPair(x, z, n, lookahead).fbar(delta);
}

DeltaProfile delta_profile(const OrbitSource& x, const OrbitSource& z, std::size_t n, std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::invalid_grid, "delta_profile: empty grid");
  if (!(grid.front() > 0.0)) throw Error(ErrorCode::invalid_grid, "delta_profile: grid values must be positive");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw Error(ErrorCode::invalid_grid, "delta_profile: grid must strictly increase");
  }
  require_compatible(x, z);
  const std::size_t lookahead = x.is_symbolic() ? agreement_length(grid.front()) : 0;
  const WindowPair windows(x, z, n, lookahead);
  DeltaProfile profile{n, std::vector<double>(grid.begin(), grid.end()), {}};
  profile.values.reserve(grid.size());
  for (double delta : grid) profile.values.push_back(windows.fbar(delta));
  return profile;
}

const char* to_string(EstimateKind kind) noexcept {
  switch (kind) {
    case EstimateKind::fk: return "fk";
    case EstimateKind::besicovitch: return "besicovitch";
    case EstimateKind::besicovitch_prime: return "besicovitch_prime";
  }
  return "unknown";
}

namespace {

// Least grid index whose point satisfies `holds`; the sentinel always does.
// `holds` must be upward closed along the grid.
template <class Predicate>
std::size_t first_qualifying(const DeltaGrid& grid, Predicate holds) {
  std::size_t lo = 0;
  std::size_t hi = grid.interior_size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (holds(grid.points()[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

PseudometricEstimate lattice_estimate(EstimateKind kind, const DeltaGrid& grid, std::size_t index, std::size_t n) {
  return PseudometricEstimate{kind, grid.points()[index], n, grid.step(), index == grid.interior_size()};
}

std::size_t lattice_lookahead(const OrbitSource& x, double step) {
  return x.is_symbolic() ? agreement_length(step) : 0;
}

}  // namespace

PseudometricEstimate rho_fk_estimate(const WindowPair& windows, const DeltaGrid& grid) {
  const std::size_t index = first_qualifying(grid, [&](double delta) { return windows.fbar(delta) < delta; });
  return lattice_estimate(EstimateKind::fk, grid, index, windows.n());
}

PseudometricEstimate rho_fk_estimate(const OrbitSource& x, const OrbitSource& z, std::size_t n, double grid_step) {
  require_horizon(n);
  require_grid_step(grid_step);
  require_compatible(x, z);
  const DeltaGrid grid(grid_step, x.diameter());
  return rho_fk_estimate(WindowPair(x, z, n, lattice_lookahead(x, grid_step)), grid);
}

PseudometricEstimate rho_b_estimate(const OrbitSource& x, const OrbitSource& z, std::size_t n) {
  require_horizon(n);
  require_compatible(x, z);
  const WindowPair windows(x, z, n, x.is_symbolic() ? kBesicovitchLookahead : 0);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += windows.pointwise_distance(i);
  return PseudometricEstimate{EstimateKind::besicovitch, sum / static_cast<double>(n), n, 0.0, false};
}

PseudometricEstimate rho_b_prime_estimate(const WindowPair& windows, const DeltaGrid& grid) {
  const double n = static_cast<double>(windows.n());
  const std::size_t index = first_qualifying(
      grid, [&](double delta) { return static_cast<double>(windows.far_count(delta)) / n < delta; });
  return lattice_estimate(EstimateKind::besicovitch_prime, grid, index, windows.n());
}

PseudometricEstimate rho_b_prime_estimate(const OrbitSource& x, const OrbitSource& z, std::size_t n,
                                          double grid_step) {
  require_horizon(n);
  require_grid_step(grid_step);
  require_compatible(x, z);
  const DeltaGrid grid(grid_step, x.diameter());
  return rho_b_prime_estimate(WindowPair(x, z, n, lattice_lookahead(x, grid_step)), grid);
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> doubling_schedule(std::size_t n0, std::size_t n_max) {
  require_horizon(n0);
  std::vector<std::size_t> schedule;
  for (std::size_t n = n0; n <= n_max; n *= 2) schedule.push_back(n);
  return schedule;
}

namespace {

void require_schedule(std::span<const std::size_t> schedule) {
  if (schedule.empty()) throw Error(ErrorCode::invalid_argument, "schedule must be nonempty");
  require_horizon(schedule.front());
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (schedule[k] <= schedule[k - 1]) throw Error(ErrorCode::invalid_argument, "schedule must strictly increase");
  }
}

double tail_max(const std::vector<double>& values) {
  const std::size_t from = values.size() > kLimsupTail ? values.size() - kLimsupTail : 0;
  return *std::max_element(values.begin() + static_cast<std::ptrdiff_t>(from), values.end());
}

}  // namespace

ScheduleEstimate fbar_delta_estimate(const OrbitSource& x, const OrbitSource& z, std::span<const std::size_t> schedule,
                                     double delta) {
  require_schedule(schedule);
  ScheduleEstimate out{std::vector<std::size_t>(schedule.begin(), schedule.end()), {}, 0.0};
  for (std::size_t n : schedule) out.trajectory.push_back(fbar_n_delta(x, z, n, delta));
  out.limsup_proxy = tail_max(out.trajectory);
  return out;
}

ScheduleEstimate rho_fk_schedule(const OrbitSource& x, const OrbitSource& z, std::span<const std::size_t> schedule,
                                 double grid_step) {
  require_schedule(schedule);
  ScheduleEstimate out{std::vector<std::size_t>(schedule.begin(), schedule.end()), {}, 0.0};
  for (std::size_t n : schedule) out.trajectory.push_back(rho_fk_estimate(x, z, n, grid_step).value);
  out.limsup_proxy = tail_max(out.trajectory);
  return out;
}

// ---------------------------------------------------------------------------

Density window_density(const IndexSet& set, std::size_t n) {
  require_horizon(n);
  Density d{0, n};
  for (std::uint64_t i = 0; i < n; ++i) d.count += set(i) ? 1 : 0;
  return d;
}

Density window_density(std::span<const std::uint64_t> sorted_indices, std::size_t n) {
  require_horizon(n);
  const auto end = std::lower_bound(sorted_indices.begin(), sorted_indices.end(), std::uint64_t{n});
  return Density{static_cast<std::size_t>(end - sorted_indices.begin()), n};
}

namespace {

std::vector<double> tail_densities(const IndexSet& set, std::span<const std::size_t> schedule) {
  require_schedule(schedule);
  const std::size_t from = schedule.size() > kLimsupTail ? schedule.size() - kLimsupTail : 0;
  std::vector<double> values;
  for (std::size_t k = from; k < schedule.size(); ++k) values.push_back(window_density(set, schedule[k]).value());
  return values;
}

}  // namespace

double upper_density(const IndexSet& set, std::span<const std::size_t> schedule) {
  const auto values = tail_densities(set, schedule);
  return *std::max_element(values.begin(), values.end());
}

double lower_density(const IndexSet& set, std::span<const std::size_t> schedule) {
  const auto values = tail_densities(set, schedule);
  return *std::min_element(values.begin(), values.end());
}

}  // namespace fkdist
