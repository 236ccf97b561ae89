#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fkdist/word.hpp"

namespace fkdist {

/// Version tag of the counter-based generator behind Bernoulli orbits and
/// every seeded sampler. Echoed into CLI output headers.
inline constexpr const char* kRngVersion = "splitmix64-counter/1";

/// Absolute tolerance for strict `d < delta` comparisons on real-valued
/// metrics: a pair is delta-close iff d < delta - kGeometricTolerance.
inline constexpr double kGeometricTolerance = 1e-12;

/// Golden-mean rotation number (sqrt(5) - 1) / 2.
inline constexpr double kGolden = 0.61803398874989484820;

// ---------------------------------------------------------------------------
// Counter-based randomness

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Random 64-bit word number `counter` of the stream keyed by `seed`.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) noexcept {
  return splitmix64(splitmix64(seed) + counter * 0xD1B54A32D192ED03ULL);
}

/// Uniform double in [0, 1) built from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential view over a counter-based stream. Unlike the standard
/// distributions, its output is specified bit-for-bit on every platform.
class SeededStream {
public:
  explicit SeededStream(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next() noexcept { return counter_hash(seed_, counter_++); }
  double unit() noexcept { return to_unit(next()); }

  /// Uniform integer in [0, bound). Rejection sampling removes modulo bias.
  std::uint64_t below(std::uint64_t bound);

  /// Seed for an independent child stream.
  std::uint64_t fork() noexcept { return next(); }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Generators

/// Symbol-to-word morphism: `images[s]` is the image of symbol `s`.
struct SubstitutionRules {
  std::vector<Word> images;
  Symbol seed = 0;
};

SubstitutionRules thue_morse_rules();
SubstitutionRules fibonacci_rules();
SubstitutionRules chacon_rules();

/// Prefix of length `min_len` of the fixed point of `rules` starting at the
/// seed symbol. Throws Error{invalid_rules} when a rule is empty, mentions a
/// symbol outside the rule table, or the seed image does not begin with the
/// seed; Error{non_expanding} when the seed's iterates can never grow.
Word substitution_word(const SubstitutionRules& rules, std::size_t min_len);

struct SturmianWord {
  Word word;
  /// Set when alpha lies within 1e-12 of p/q for some q <= 100.
  bool near_rational = false;
};

/// Mechanical word s_k = floor((k+1) alpha + beta) - floor(k alpha + beta).
SturmianWord sturmian_word(double alpha, double beta, std::size_t n);

/// True when alpha is within 1e-12 of a rational with denominator <= 100.
bool is_near_rational(double alpha);

/// i.i.d. {0,1} symbols, P(1) = p, drawn from the counter generator.
Word bernoulli_word(std::uint64_t seed, double p, std::size_t n);

/// Points (theta0 + k alpha) mod 1 for k < n.
std::vector<double> rotation_orbit(double alpha, double theta0, std::size_t n);

/// Arc-length metric on R/Z.
double circle_distance(double a, double b) noexcept;

/// Least L >= 0 with 2^-L < delta, so that two one-sided sequences are
/// delta-close under d(x,y) = 2^-min{k : x_k != y_k} iff their first L
/// symbols agree.
std::size_t agreement_length(double delta);

// ---------------------------------------------------------------------------
// Orbit sources

enum class SystemKind { substitution, sturmian, bernoulli, periodic, explicit_word, rotation };

const char* to_string(SystemKind kind) noexcept;

/// A deterministic point of a dynamical system together with the map acting
/// on it. Symbolic kinds expose symbols by index (the shift advances the
/// index); the rotation kind exposes circle points. Values are immutable and
/// every accessor is a pure function.
class OrbitSource {
public:
  static OrbitSource substitution(SubstitutionRules rules);
  static OrbitSource thue_morse() { return substitution(thue_morse_rules()); }
  static OrbitSource fibonacci() { return substitution(fibonacci_rules()); }
  static OrbitSource chacon() { return substitution(chacon_rules()); }
  static OrbitSource sturmian(double alpha, double beta);
  static OrbitSource bernoulli(std::uint64_t seed, double p);
  static OrbitSource periodic(Word period);
  static OrbitSource explicit_word(Word word);
  static OrbitSource rotation(double alpha, double theta0);

  SystemKind kind() const noexcept { return kind_; }
  bool is_symbolic() const noexcept { return kind_ != SystemKind::rotation; }

  /// Alphabet size for symbolic kinds, 0 for rotations.
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }

  /// Diameter of the compatible metric: 1 for subshifts, 1/2 for the circle.
  double diameter() const noexcept { return is_symbolic() ? 1.0 : 0.5; }

  /// Number of elements available from index 0, or SIZE_MAX when unbounded.
  std::size_t capacity() const noexcept;

  /// The source T^k x.
  OrbitSource shifted(std::uint64_t k) const;
  std::uint64_t offset() const noexcept { return offset_; }

  const SubstitutionRules& rules() const noexcept { return rules_; }
  const Word& word() const noexcept { return word_; }
  double alpha() const noexcept { return alpha_; }
  /// Sturmian intercept or rotation initial point (before the offset).
  double phase() const noexcept { return phase_; }
  double probability() const noexcept { return probability_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Human-readable, round-trippable description (used in report headers).
  std::string describe() const;

  /// Copy of this source with the orbit replaced at indices [0, prefix.size())
  /// of the shifted orbit. Only valid for Bernoulli sources, where every
  /// modification remains a point of the full shift.
  OrbitSource with_prefix(Word prefix) const;
  const Word& forced_prefix() const noexcept { return forced_prefix_; }
  /// Absolute orbit index at which the forced prefix begins.
  std::uint64_t prefix_start() const noexcept { return prefix_start_; }

private:
  OrbitSource() = default;

  SystemKind kind_ = SystemKind::explicit_word;
  std::size_t alphabet_size_ = 0;
  std::uint64_t offset_ = 0;
  SubstitutionRules rules_;
  Word word_;
  Word forced_prefix_;
  std::uint64_t prefix_start_ = 0;
  double alpha_ = 0.0;
  double phase_ = 0.0;
  double probability_ = 0.0;
  std::uint64_t seed_ = 0;
};

/// Symbols at indices start, ..., start + len - 1 of a symbolic source.
/// Throws Error{input_length} for explicit words that are too short and
/// Error{incompatible_sources} for rotations.
Word orbit_word(const OrbitSource& source, std::size_t start, std::size_t len);

/// Circle points at indices start, ..., start + len - 1 of a rotation source.
std::vector<double> orbit_points(const OrbitSource& source, std::size_t start, std::size_t len);

}  // namespace fkdist
