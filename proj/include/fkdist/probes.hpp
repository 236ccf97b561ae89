#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fkdist/pseudometrics.hpp"
#include "fkdist/systems.hpp"

// Sampling experiments. Points of a system are drawn along one generic orbit
// (random offsets) or, for systems with a natural parameter family, from
// independently seeded members of the family. Every result is a pure function
// of its configuration and seed, and every verdict is evidence only.

namespace fkdist {

/// Offsets along the generic orbit are drawn from [0, kOffsetSpan * n).
inline constexpr std::size_t kOffsetSpan = 16;

enum class PairStrategy { shifted, independent, ball };

struct SourcePair {
  OrbitSource x;
  OrbitSource z;
};

struct PairSampling {
  PairStrategy strategy = PairStrategy::shifted;
  /// Offsets are drawn from [0, offset_range).
  std::uint64_t offset_range = 1;
  /// Ball radius for PairStrategy::ball.
  double ball_radius = 1.0;
};

/// A random point of the system: an orbit offset, or a fresh member of the
/// parameter family (Bernoulli seed, Sturmian intercept, rotation phase).
OrbitSource sample_point(const OrbitSource& system, SeededStream& stream, std::uint64_t offset_range);

/// A random point y of the system with d(center, y) < radius. Throws
/// Error{invalid_ball} unless 0 < radius <= diameter.
OrbitSource sample_in_ball(const OrbitSource& system, const OrbitSource& center, double radius,
                           SeededStream& stream, std::uint64_t offset_range);

std::vector<SourcePair> sample_pairs(const OrbitSource& system, std::size_t count, std::uint64_t seed,
                                     const PairSampling& sampling);

// ---------------------------------------------------------------------------

struct HorizonStats {
  std::size_t n = 0;
  double max = 0.0;
  double median = 0.0;  // lower median
  double min = 0.0;
};

struct ProbeReport {
  std::vector<std::size_t> schedule;
  std::vector<HorizonStats> per_horizon;
  /// estimates[h][p]: rho_fk_estimate of pair p at schedule[h].
  std::vector<std::vector<double>> estimates;
  std::vector<SourcePair> pairs;
  std::size_t pair_count = 0;
  std::uint64_t seed = 0;
  double grid_step = 0.0;
};

/// Min, lower median and max of a nonempty sample.
HorizonStats summarize(std::size_t n, std::vector<double> values);

/// Pairwise FK estimates along a horizon schedule. Even-numbered pairs are
/// shifted copies of one generic orbit, odd-numbered pairs independent points.
ProbeReport tlk_probe(const OrbitSource& system, std::span<const std::size_t> schedule, std::size_t pair_count,
                      std::uint64_t seed, double grid_step = kDefaultGridStep);

// ---------------------------------------------------------------------------

/// Largest pairwise rho_fk_estimate among the given points.
double fk_ball_sup_over(std::span<const OrbitSource> samples, std::size_t n, double grid_step);

/// sup of rho_fk over sample_count points drawn from the ball of radius
/// ball_radius around the point selected by center_seed.
double fk_ball_sup(const OrbitSource& system, std::uint64_t center_seed, double ball_radius, std::size_t sample_count,
                   std::size_t n, double grid_step, std::uint64_t seed);

enum class Verdict { sensitive_evidence, continuity_evidence };

const char* to_string(Verdict verdict) noexcept;

struct SensitivityConfig {
  std::vector<double> eps_grid;
  std::vector<double> ball_grid;
  std::size_t centers = 3;
  std::size_t samples_per_ball = 4;
  std::size_t n = 4096;
  std::uint64_t seed = 0;
  double grid_step = kDefaultGridStep;
};

struct SensitivityVerdict {
  double eps = 0.0;
  Verdict verdict = Verdict::continuity_evidence;
  /// Extremes of fk_ball_sup over every (center, radius) cell.
  double min_ball_sup = 0.0;
  double max_ball_sup = 0.0;
};

/// SENSITIVE evidence at eps when every sampled ball has sup > eps,
/// CONTINUITY evidence otherwise.
std::vector<SensitivityVerdict> sensitivity_scan(const OrbitSource& system, const SensitivityConfig& config);

// ---------------------------------------------------------------------------

/// Zero-coordinate symbol partition for subshifts, or arcs
/// [cuts[k-1], cuts[k]) of the circle for rotations.
struct PartitionSpec {
  std::vector<double> cuts;

  std::string id() const;
};

struct PartitionWord {
  Word symbols;
  std::string partition_id;
};

/// Itinerary of T^offset x through the partition, n symbols long.
PartitionWord partition_word(const OrbitSource& system, const PartitionSpec& partition, std::uint64_t offset,
                             std::size_t n);

struct KatokResult {
  double fraction = 0.0;
  std::size_t center = 0;
  std::vector<std::uint64_t> offsets;
};

/// max over centers w of |{w' : fbar_word(w, w') < eps}| / |words|.
KatokResult katok_fraction(std::span<const PartitionWord> words, double eps);

/// Sampling form of Katok's criterion along a generic orbit.
KatokResult katok_check(const OrbitSource& system, const PartitionSpec& partition, std::size_t n, double eps,
                        std::size_t sample_count, std::uint64_t seed);

std::vector<PartitionWord> katok_samples(const OrbitSource& system, const PartitionSpec& partition, std::size_t n,
                                         std::size_t sample_count, std::uint64_t seed,
                                         std::vector<std::uint64_t>* offsets = nullptr);

}  // namespace fkdist
