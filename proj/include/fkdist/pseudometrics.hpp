#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fkdist/matching.hpp"
#include "fkdist/systems.hpp"
#include "fkdist/word.hpp"

namespace fkdist {

/// Default spacing of the delta lattice.
inline constexpr double kDefaultGridStep = 1.0 / 64.0;

/// Symbols inspected past a window position when evaluating the shift
/// metric pointwise. Distances below 2^-64 are flushed to zero.
inline constexpr std::size_t kBesicovitchLookahead = 64;

// ---------------------------------------------------------------------------
// Word edit distance

/// Length of a longest common subsequence of u and w.
std::size_t lcs_length(std::span<const Symbol> u, std::span<const Symbol> w);

/// Edit distance 1 - |LCS(u, w)| / n for words of equal length n >= 1.
double fbar_word(std::span<const Symbol> u, std::span<const Symbol> w);

// ---------------------------------------------------------------------------
// Delta lattice

/// Uniform lattice {step, 2 step, ...} up to the metric diameter, followed by
/// one sentinel point beyond the diameter. Every point is k * step exactly.
class DeltaGrid {
public:
  DeltaGrid(double step, double diameter);

  double step() const noexcept { return step_; }
  /// All points including the sentinel (last element).
  const std::vector<double>& points() const noexcept { return points_; }
  double sentinel() const noexcept { return points_.back(); }
  /// Number of non-sentinel points.
  std::size_t interior_size() const noexcept { return points_.size() - 1; }

private:
  double step_;
  std::vector<double> points_;
};

// ---------------------------------------------------------------------------
// Materialized windows

/// Orbit segments of two sources of the same type, materialized once for
/// repeated fit and pointwise-distance queries at horizon n.
class WindowPair {
public:
  /// `lookahead` extra symbols beyond the window are generated for symbolic
  /// sources; it bounds the agreement length any query may use.
  WindowPair(const OrbitSource& x, const OrbitSource& z, std::size_t n, std::size_t lookahead);

  std::size_t n() const noexcept { return n_; }
  bool symbolic() const noexcept { return symbolic_; }

  /// Maximal fit of an (n, delta)-match.
  MatchResult fit(double delta, Witness witness = Witness::skip) const;

  /// f_{n,delta}: 1 - fit / n.
  double fbar(double delta) const;

  /// |{i < n : d(T^i x, T^i z) >= delta}|.
  std::size_t far_count(double delta) const;

  /// d(T^i x, T^i z) for i < n.
  double pointwise_distance(std::size_t i) const;

private:
  std::size_t length_for(double delta) const;

  std::size_t n_;
  std::size_t lookahead_;
  bool symbolic_;
  Word x_word_;
  Word z_word_;
  std::vector<std::size_t> common_run_;  // agreeing symbols from i, capped at lookahead
  std::vector<double> x_points_;
  std::vector<double> z_points_;
};

// ---------------------------------------------------------------------------
// Estimators

/// f_{n,delta}(x, z). Throws Error{incompatible_sources} when one source is
/// symbolic and the other geometric.
double fbar_n_delta(const OrbitSource& x, const OrbitSource& z, std::size_t n, double delta);

struct DeltaProfile {
  std::size_t n = 0;
  std::vector<double> grid;
  std::vector<double> values;
};

/// f_{n,delta} on a strictly increasing positive grid.
DeltaProfile delta_profile(const OrbitSource& x, const OrbitSource& z, std::size_t n, std::span<const double> grid);

enum class EstimateKind { fk, besicovitch, besicovitch_prime };

const char* to_string(EstimateKind kind) noexcept;

struct PseudometricEstimate {
  EstimateKind kind = EstimateKind::fk;
  double value = 0.0;
  std::size_t n = 0;
  /// Lattice step; zero for the Besicovitch average.
  double grid_step = 0.0;
  /// Set when no interior grid point satisfied the defining inequality.
  bool sentinel = false;
};

/// Least grid delta with f_{n,delta}(x, z) < delta, or the sentinel.
PseudometricEstimate rho_fk_estimate(const OrbitSource& x, const OrbitSource& z, std::size_t n,
                                     double grid_step = kDefaultGridStep);

/// Same as rho_fk_estimate over an already materialized pair.
PseudometricEstimate rho_fk_estimate(const WindowPair& windows, const DeltaGrid& grid);

/// (1/n) sum_{j<n} d(T^j x, T^j z), summed in index order.
PseudometricEstimate rho_b_estimate(const OrbitSource& x, const OrbitSource& z, std::size_t n);

/// Least grid delta with (1/n)|{i < n : d(T^i x, T^i z) >= delta}| < delta.
PseudometricEstimate rho_b_prime_estimate(const OrbitSource& x, const OrbitSource& z, std::size_t n,
                                          double grid_step = kDefaultGridStep);

PseudometricEstimate rho_b_prime_estimate(const WindowPair& windows, const DeltaGrid& grid);

// ---------------------------------------------------------------------------
// Horizon schedules

/// n0, 2 n0, 4 n0, ... up to and including the largest value <= n_max.
std::vector<std::size_t> doubling_schedule(std::size_t n0, std::size_t n_max);

/// Number of trailing schedule points the limsup proxy looks at.
inline constexpr std::size_t kLimsupTail = 3;

struct ScheduleEstimate {
  std::vector<std::size_t> schedule;
  std::vector<double> trajectory;
  /// Maximum over the final kLimsupTail schedule points.
  double limsup_proxy = 0.0;
};

/// Trajectory of f_{n,delta} along a horizon schedule.
ScheduleEstimate fbar_delta_estimate(const OrbitSource& x, const OrbitSource& z, std::span<const std::size_t> schedule,
                                     double delta);

/// Trajectory of rho_fk_estimate along a horizon schedule.
ScheduleEstimate rho_fk_schedule(const OrbitSource& x, const OrbitSource& z, std::span<const std::size_t> schedule,
                                 double grid_step = kDefaultGridStep);

// ---------------------------------------------------------------------------
// Densities

/// |S ∩ [0, n)| / n kept as an exact fraction.
struct Density {
  std::size_t count = 0;
  std::size_t n = 0;
  double value() const noexcept { return static_cast<double>(count) / static_cast<double>(n); }
};

using IndexSet = std::function<bool(std::uint64_t)>;

Density window_density(const IndexSet& set, std::size_t n);

/// Density of a sorted index list within [0, n).
Density window_density(std::span<const std::uint64_t> sorted_indices, std::size_t n);

/// Finite proxies of the upper and lower asymptotic densities: extreme
/// window density over the final kLimsupTail points of the schedule.
double upper_density(const IndexSet& set, std::span<const std::size_t> schedule);
double lower_density(const IndexSet& set, std::span<const std::size_t> schedule);

}  // namespace fkdist
