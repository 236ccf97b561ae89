#include "fkdist/probes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fkdist/error.hpp"
#include "fkdist/parallel.hpp"

namespace fkdist {

namespace {

// Draws points of a ball around a fixed center. For subshifts other than the
// full shift, candidates are the positions of the generic orbit whose next L
// symbols agree with the center's, so every sample stays in the system.
class BallSampler {
public:
  BallSampler(const OrbitSource& system, const OrbitSource& center, double radius, std::uint64_t offset_range)
      : system_(system), center_(center), radius_(radius) {
    if (!(radius > 0.0) || radius > system.diameter()) {
      throw Error(ErrorCode::invalid_ball, "ball radius must lie in (0, diameter]");
    }
    if (system.kind() == SystemKind::rotation) {
      center_point_ = orbit_points(center, 0, 1).front();
      return;
    }
    length_ = agreement_length(radius);
    prefix_ = orbit_word(center, 0, length_);
    if (system.kind() == SystemKind::bernoulli) return;

    const std::size_t range = static_cast<std::size_t>(std::max<std::uint64_t>(offset_range, 1));
    const Word orbit = orbit_word(system, 0, range + length_);
    for (std::size_t a = 0; a < range; ++a) {
      if (std::equal(prefix_.begin(), prefix_.end(), orbit.begin() + static_cast<std::ptrdiff_t>(a))) {
        candidates_.push_back(a);
      }
    }
  }

  OrbitSource draw(SeededStream& stream) const {
    switch (system_.kind()) {
      case SystemKind::rotation: {
        const double shift = radius_ * (2.0 * stream.unit() - 1.0);
        double theta = center_point_ + shift;
        theta -= std::floor(theta);
        return OrbitSource::rotation(system_.alpha(), theta);
      }
      case SystemKind::bernoulli:
        return OrbitSource::bernoulli(stream.fork(), system_.probability()).with_prefix(prefix_);
      default:
        if (candidates_.empty()) return center_;
        return system_.shifted(candidates_[static_cast<std::size_t>(stream.below(candidates_.size()))]);
    }
  }

private:
  OrbitSource system_;
  OrbitSource center_;
  double radius_;
  double center_point_ = 0.0;
  std::size_t length_ = 0;
  Word prefix_;
  std::vector<std::uint64_t> candidates_;
};

void require_positive(std::size_t value, const char* what) {
  if (value == 0) throw Error(ErrorCode::invalid_argument, std::string(what) + " must be at least 1");
}

}  // namespace

OrbitSource sample_point(const OrbitSource& system, SeededStream& stream, std::uint64_t offset_range) {
  switch (system.kind()) {
    case SystemKind::bernoulli: return OrbitSource::bernoulli(stream.fork(), system.probability());
    case SystemKind::sturmian: return OrbitSource::sturmian(system.alpha(), stream.unit());
    case SystemKind::rotation: return OrbitSource::rotation(system.alpha(), stream.unit());
    default: return system.shifted(stream.below(std::max<std::uint64_t>(offset_range, 1)));
  }
}

OrbitSource sample_in_ball(const OrbitSource& system, const OrbitSource& center, double radius,
                           SeededStream& stream, std::uint64_t offset_range) {
  return BallSampler(system, center, radius, offset_range).draw(stream);
}

std::vector<SourcePair> sample_pairs(const OrbitSource& system, std::size_t count, std::uint64_t seed,
                                     const PairSampling& sampling) {
  require_positive(count, "sample_pairs: count");
  SeededStream stream(seed);
  const std::uint64_t range = std::max<std::uint64_t>(sampling.offset_range, 1);
  std::vector<SourcePair> pairs;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    switch (sampling.strategy) {
      case PairStrategy::shifted: {
        const std::uint64_t a = stream.below(range);
        const std::uint64_t b = stream.below(range);
        pairs.push_back({system.shifted(a), system.shifted(b)});
        break;
      }
      case PairStrategy::independent: {
        OrbitSource x = sample_point(system, stream, range);
        OrbitSource z = sample_point(system, stream, range);
        pairs.push_back({std::move(x), std::move(z)});
        break;
      }
      case PairStrategy::ball: {
        OrbitSource x = sample_point(system, stream, range);
        OrbitSource z = sample_in_ball(system, x, sampling.ball_radius, stream, range);
        pairs.push_back({std::move(x), std::move(z)});
        break;
      }
    }
  }
  return pairs;
}

// ---------------------------------------------------------------------------

HorizonStats summarize(std::size_t n, std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::invalid_argument, "summarize: empty sample");
  std::sort(values.begin(), values.end());
  return HorizonStats{n, values.back(), values[(values.size() - 1) / 2], values.front()};
}

ProbeReport tlk_probe(const OrbitSource& system, std::span<const std::size_t> schedule, std::size_t pair_count,
                      std::uint64_t seed, double grid_step) {
  require_positive(pair_count, "tlk_probe: pair_count");
  if (schedule.empty()) throw Error(ErrorCode::invalid_argument, "tlk_probe: schedule must be nonempty");
  require_positive(schedule.front(), "tlk_probe: horizon");
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (schedule[k] <= schedule[k - 1]) throw Error(ErrorCode::invalid_argument, "tlk_probe: schedule must strictly increase");
  }

  ProbeReport report;
  report.schedule.assign(schedule.begin(), schedule.end());
  report.pair_count = pair_count;
  report.seed = seed;
  report.grid_step = grid_step;

  const std::uint64_t range = kOffsetSpan * schedule.back();
  SeededStream stream(seed);
  for (std::size_t p = 0; p < pair_count; ++p) {
    if (p % 2 == 0) {
      const std::uint64_t a = stream.below(range);
      const std::uint64_t b = stream.below(range);
      report.pairs.push_back({system.shifted(a), system.shifted(b)});
    } else {
      OrbitSource x = sample_point(system, stream, range);
      OrbitSource z = sample_point(system, stream, range);
      report.pairs.push_back({std::move(x), std::move(z)});
    }
  }

  const std::size_t horizons = schedule.size();
  report.estimates.assign(horizons, std::vector<double>(pair_count, 0.0));
  parallel_for(horizons * pair_count, [&](std::size_t cell) {
    const std::size_t h = cell / pair_count;
    const std::size_t p = cell % pair_count;
    const SourcePair& pair = report.pairs[p];
    report.estimates[h][p] = rho_fk_estimate(pair.x, pair.z, schedule[h], grid_step).value;
  });
  for (std::size_t h = 0; h < horizons; ++h) report.per_horizon.push_back(summarize(schedule[h], report.estimates[h]));
  return report;
}

// ---------------------------------------------------------------------------

double fk_ball_sup_over(std::span<const OrbitSource> samples, std::size_t n, double grid_step) {
  if (samples.size() < 2) throw Error(ErrorCode::invalid_argument, "fk_ball_sup: at least two samples required");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) cells.emplace_back(i, j);
  }
  std::vector<double> values(cells.size());
  parallel_for(cells.size(), [&](std::size_t c) {
    values[c] = rho_fk_estimate(samples[cells[c].first], samples[cells[c].second], n, grid_step).value;
  });
  return *std::max_element(values.begin(), values.end());
}

double fk_ball_sup(const OrbitSource& system, std::uint64_t center_seed, double ball_radius, std::size_t sample_count,
                   std::size_t n, double grid_step, std::uint64_t seed) {
  if (sample_count < 2) throw Error(ErrorCode::invalid_argument, "fk_ball_sup: sample_count must be at least 2");
  require_positive(n, "fk_ball_sup: n");
  const std::uint64_t range = kOffsetSpan * n;
  SeededStream center_stream(center_seed);
  const OrbitSource center = sample_point(system, center_stream, range);
  const BallSampler sampler(system, center, ball_radius, range);
  SeededStream stream(seed);
  std::vector<OrbitSource> samples;
  samples.reserve(sample_count);
  for (std::size_t k = 0; k < sample_count; ++k) samples.push_back(sampler.draw(stream));
  return fk_ball_sup_over(samples, n, grid_step);
}

const char* to_string(Verdict verdict) noexcept {
  return verdict == Verdict::sensitive_evidence ? "SENSITIVE-EVIDENCE" : "CONTINUITY-EVIDENCE";
}

std::vector<SensitivityVerdict> sensitivity_scan(const OrbitSource& system, const SensitivityConfig& config) {
  if (config.eps_grid.empty()) throw Error(ErrorCode::invalid_grid, "sensitivity_scan: empty eps grid");
  if (config.ball_grid.empty()) throw Error(ErrorCode::invalid_grid, "sensitivity_scan: empty ball grid");
  require_positive(config.centers, "sensitivity_scan: centers");

  std::vector<double> sups;
  for (std::size_t c = 0; c < config.centers; ++c) {
    const std::uint64_t center_seed = counter_hash(config.seed, 2 * c);
    for (std::size_t r = 0; r < config.ball_grid.size(); ++r) {
      const std::uint64_t ball_seed = counter_hash(config.seed, 2 * (c * config.ball_grid.size() + r) + 1);
      sups.push_back(fk_ball_sup(system, center_seed, config.ball_grid[r], config.samples_per_ball, config.n,
                                 config.grid_step, ball_seed));
    }
  }
  const auto [lowest, highest] = std::minmax_element(sups.begin(), sups.end());

  std::vector<SensitivityVerdict> verdicts;
  for (double eps : config.eps_grid) {
    const Verdict v = *lowest > eps ? Verdict::sensitive_evidence : Verdict::continuity_evidence;
    verdicts.push_back({eps, v, *lowest, *highest});
  }
  return verdicts;
}

// ---------------------------------------------------------------------------

std::string PartitionSpec::id() const {
  if (cuts.empty()) return "symbol";
  std::string s = "arcs";
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", cuts[k]);
    s += (k == 0 ? ":" : ",");
    s += buf;
  }
  return s;
}

PartitionWord partition_word(const OrbitSource& system, const PartitionSpec& partition, std::uint64_t offset,
                             std::size_t n) {
  const OrbitSource point = system.shifted(offset);
  if (system.is_symbolic()) {
    if (!partition.cuts.empty()) {
      throw Error(ErrorCode::incompatible_sources, "partition_word: arc partitions apply to rotations only");
    }
    return PartitionWord{orbit_word(point, 0, n), partition.id()};
  }
  for (std::size_t k = 0; k < partition.cuts.size(); ++k) {
    const double c = partition.cuts[k];
    if (!(c > 0.0 && c < 1.0) || (k > 0 && !(c > partition.cuts[k - 1]))) {
      throw Error(ErrorCode::invalid_argument, "partition_word: cuts must strictly increase inside (0, 1)");
    }
  }
  const std::vector<double> points = orbit_points(point, 0, n);
  Word symbols(n);
  for (std::size_t i = 0; i < n; ++i) {
    symbols[i] = static_cast<Symbol>(
        std::upper_bound(partition.cuts.begin(), partition.cuts.end(), points[i]) - partition.cuts.begin());
  }
  return PartitionWord{std::move(symbols), partition.id()};
}

KatokResult katok_fraction(std::span<const PartitionWord> words, double eps) {
  const std::size_t m = words.size();
  if (m < 2) throw Error(ErrorCode::invalid_argument, "katok: at least two samples required");
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "katok: eps must be positive");

  // close[i * m + j] for i < j, filled row by row in parallel.
  std::vector<unsigned char> close(m * m, 0);
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      close[i * m + j] = fbar_word(words[i].symbols, words[j].symbols) < eps ? 1 : 0;
    }
  });

  std::vector<std::size_t> hits(m, 1);  // every word is at distance 0 from itself
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (close[i * m + j]) {
        ++hits[i];
        ++hits[j];
      }
    }
  }
  const auto best = std::max_element(hits.begin(), hits.end());
  KatokResult result;
  result.center = static_cast<std::size_t>(best - hits.begin());
  result.fraction = static_cast<double>(*best) / static_cast<double>(m);
  return result;
}

std::vector<PartitionWord> katok_samples(const OrbitSource& system, const PartitionSpec& partition, std::size_t n,
                                         std::size_t sample_count, std::uint64_t seed,
                                         std::vector<std::uint64_t>* offsets) {
  require_positive(n, "katok: n");
  if (sample_count < 2) throw Error(ErrorCode::invalid_argument, "katok: sample_count must be at least 2");
  SeededStream stream(seed);
  std::vector<PartitionWord> words;
  words.reserve(sample_count);
  for (std::size_t k = 0; k < sample_count; ++k) {
    const std::uint64_t offset = stream.below(kOffsetSpan * n);
    if (offsets) offsets->push_back(offset);
    words.push_back(partition_word(system, partition, offset, n));
  }
  return words;
}

KatokResult katok_check(const OrbitSource& system, const PartitionSpec& partition, std::size_t n, double eps,
                        std::size_t sample_count, std::uint64_t seed) {
  std::vector<std::uint64_t> offsets;
  const auto words = katok_samples(system, partition, n, sample_count, seed, &offsets);
  KatokResult result = katok_fraction(words, eps);
  result.offsets = std::move(offsets);
  return result;
}

}  // namespace fkdist
