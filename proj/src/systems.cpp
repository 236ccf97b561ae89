#include "fkdist/systems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "fkdist/error.hpp"

namespace fkdist {

std::uint64_t SeededStream::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::invalid_argument, "SeededStream::below: bound must be positive");
  // Largest multiple of bound that fits, minus one.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r < limit) return r % bound;
  }
}

SubstitutionRules thue_morse_rules() { return {{{0, 1}, {1, 0}}, 0}; }
SubstitutionRules fibonacci_rules() { return {{{0, 1}, {0}}, 0}; }
SubstitutionRules chacon_rules() { return {{{0, 0, 1, 0}, {1}}, 0}; }

namespace {

void validate_rules(const SubstitutionRules& rules) {
  const std::size_t k = rules.images.size();
  if (rules.seed >= k) throw Error(ErrorCode::invalid_rules, "substitution: seed symbol has no rule");
  for (std::size_t s = 0; s < k; ++s) {
    const Word& image = rules.images[s];
    if (image.empty()) {
      throw Error(ErrorCode::invalid_rules, "substitution: rule for symbol " + std::to_string(s) + " is empty");
    }
    for (Symbol c : image) {
      if (c >= k) {
        throw Error(ErrorCode::invalid_rules,
                    "substitution: rule for symbol " + std::to_string(s) + " uses unknown symbol " + std::to_string(c));
      }
    }
  }
  const Word& seed_image = rules.images[rules.seed];
  if (seed_image.front() != rules.seed) {
    throw Error(ErrorCode::invalid_rules, "substitution: rule for the seed does not start with the seed");
  }
  // Once the seed image has two letters every later iterate grows strictly,
  // since all images are nonempty.
  if (seed_image.size() < 2) {
    throw Error(ErrorCode::non_expanding, "substitution: rules never grow the seed");
  }
}

}  // namespace

Word substitution_word(const SubstitutionRules& rules, std::size_t min_len) {
  validate_rules(rules);
  if (min_len == 0) throw Error(ErrorCode::invalid_argument, "substitution: min_len must be at least 1");

  // The fixed point u satisfies u = sigma(u[0]) sigma(u[1]) ..., so it can be
  // produced by reading it while it is being written.
  Word out = rules.images[rules.seed];
  out.reserve(min_len + 64);
  for (std::size_t read = 1; out.size() < min_len; ++read) {
    const Word& image = rules.images[out[read]];
    out.insert(out.end(), image.begin(), image.end());
  }
  out.resize(min_len);
  return out;
}

bool is_near_rational(double alpha) {
  for (int q = 1; q <= 100; ++q) {
    const double p = std::nearbyint(alpha * q);
    if (std::fabs(alpha - p / q) < 1e-12) return true;
  }
  return false;
}

namespace {

Symbol sturmian_symbol(double alpha, double beta, std::uint64_t k) {
  const double kk = static_cast<double>(k);
  const double hi = std::floor(std::fma(kk + 1.0, alpha, beta));
  const double lo = std::floor(std::fma(kk, alpha, beta));
  return static_cast<Symbol>(hi - lo);
}

Symbol bernoulli_symbol(std::uint64_t seed, double p, std::uint64_t k) {
  return to_unit(counter_hash(seed, k)) < p ? 1u : 0u;
}

double rotation_point(double alpha, double theta0, std::uint64_t k) {
  const double x = std::fma(static_cast<double>(k), alpha, theta0);
  return x - std::floor(x);
}

void require_unit_interval(double value, const char* what, bool allow_one) {
  if (!(value >= 0.0) || (allow_one ? value > 1.0 : value >= 1.0)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " out of range");
  }
}

}  // namespace

SturmianWord sturmian_word(double alpha, double beta, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::invalid_argument, "sturmian: alpha must lie in (0,1)");
  require_unit_interval(beta, "sturmian: beta", false);
  if (n == 0) throw Error(ErrorCode::invalid_argument, "sturmian: n must be at least 1");
  SturmianWord result;
  result.word.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.word[k] = sturmian_symbol(alpha, beta, k);
  result.near_rational = is_near_rational(alpha);
  return result;
}

Word bernoulli_word(std::uint64_t seed, double p, std::size_t n) {
  require_unit_interval(p, "bernoulli: p", true);
  if (n == 0) throw Error(ErrorCode::invalid_argument, "bernoulli: n must be at least 1");
  Word w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = bernoulli_symbol(seed, p, k);
  return w;
}

std::vector<double> rotation_orbit(double alpha, double theta0, std::size_t n) {
  require_unit_interval(theta0, "rotation: theta0", false);
  if (!std::isfinite(alpha)) throw Error(ErrorCode::invalid_argument, "rotation: alpha must be finite");
  if (n == 0) throw Error(ErrorCode::invalid_argument, "rotation: n must be at least 1");
  std::vector<double> points(n);
  for (std::size_t k = 0; k < n; ++k) points[k] = rotation_point(alpha, theta0, k);
  return points;
}

double circle_distance(double a, double b) noexcept {
  double diff = std::fabs(a - b);
  diff -= std::floor(diff);
  return std::min(diff, 1.0 - diff);
}

std::size_t agreement_length(double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "agreement_length: delta must be positive");
  std::size_t length = 0;
  for (double radius = 1.0; !(radius < delta); radius *= 0.5) ++length;
  return length;
}

const char* to_string(SystemKind kind) noexcept {
  switch (kind) {
    case SystemKind::substitution: return "substitution";
    case SystemKind::sturmian: return "sturmian";
    case SystemKind::bernoulli: return "bernoulli";
    case SystemKind::periodic: return "periodic";
    case SystemKind::explicit_word: return "explicit";
    case SystemKind::rotation: return "rotation";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

namespace {

std::size_t alphabet_of(const Word& w) {
  Symbol top = 0;
  for (Symbol s : w) top = std::max(top, s);
  return w.empty() ? 0 : static_cast<std::size_t>(top) + 1;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_word(const Word& w) {
  std::string s;
  for (Symbol c : w) {
    if (!s.empty() && alphabet_of(w) > 10) s += '.';
    s += std::to_string(c);
  }
  return s;
}

}  // namespace

OrbitSource OrbitSource::substitution(SubstitutionRules rules) {
  validate_rules(rules);
  OrbitSource src;
  src.kind_ = SystemKind::substitution;
  src.alphabet_size_ = rules.images.size();
  src.rules_ = std::move(rules);
  return src;
}

OrbitSource OrbitSource::sturmian(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::invalid_argument, "sturmian: alpha must lie in (0,1)");
  require_unit_interval(beta, "sturmian: beta", false);
  OrbitSource src;
  src.kind_ = SystemKind::sturmian;
  src.alphabet_size_ = 2;
  src.alpha_ = alpha;
  src.phase_ = beta;
  return src;
}

OrbitSource OrbitSource::bernoulli(std::uint64_t seed, double p) {
  require_unit_interval(p, "bernoulli: p", true);
  OrbitSource src;
  src.kind_ = SystemKind::bernoulli;
  src.alphabet_size_ = 2;
  src.seed_ = seed;
  src.probability_ = p;
  return src;
}

OrbitSource OrbitSource::periodic(Word period) {
  if (period.empty()) throw Error(ErrorCode::invalid_argument, "periodic: period word must be nonempty");
  OrbitSource src;
  src.kind_ = SystemKind::periodic;
  src.alphabet_size_ = alphabet_of(period);
  src.word_ = std::move(period);
  return src;
}

OrbitSource OrbitSource::explicit_word(Word word) {
  if (word.empty()) throw Error(ErrorCode::invalid_argument, "explicit: word must be nonempty");
  OrbitSource src;
  src.kind_ = SystemKind::explicit_word;
  src.alphabet_size_ = alphabet_of(word);
  src.word_ = std::move(word);
  return src;
}

OrbitSource OrbitSource::rotation(double alpha, double theta0) {
  if (!std::isfinite(alpha)) throw Error(ErrorCode::invalid_argument, "rotation: alpha must be finite");
  require_unit_interval(theta0, "rotation: theta0", false);
  OrbitSource src;
  src.kind_ = SystemKind::rotation;
  src.alpha_ = alpha;
  src.phase_ = theta0;
  return src;
}

std::size_t OrbitSource::capacity() const noexcept {
  if (kind_ != SystemKind::explicit_word) return std::numeric_limits<std::size_t>::max();
  return offset_ >= word_.size() ? 0 : word_.size() - static_cast<std::size_t>(offset_);
}

OrbitSource OrbitSource::shifted(std::uint64_t k) const {
  OrbitSource copy = *this;
  copy.offset_ += k;
  return copy;
}

OrbitSource OrbitSource::with_prefix(Word prefix) const {
  if (kind_ != SystemKind::bernoulli) {
    throw Error(ErrorCode::incompatible_sources, "with_prefix: only Bernoulli orbits admit arbitrary prefixes");
  }
  for (Symbol s : prefix) {
    if (s >= alphabet_size_) throw Error(ErrorCode::invalid_argument, "with_prefix: symbol outside alphabet");
  }
  OrbitSource copy = *this;
  copy.forced_prefix_ = std::move(prefix);
  copy.prefix_start_ = offset_;
  return copy;
}

std::string OrbitSource::describe() const {
  std::string s;
  switch (kind_) {
    case SystemKind::substitution: {
      s = "substitution:";
      for (std::size_t i = 0; i < rules_.images.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(i) + '>' + format_word(rules_.images[i]);
      }
      s += ";seed=" + std::to_string(rules_.seed);
      break;
    }
    case SystemKind::sturmian:
      s = "sturmian:alpha=" + format_real(alpha_) + ";beta=" + format_real(phase_);
      break;
    case SystemKind::bernoulli:
      s = "bernoulli:p=" + format_real(probability_) + ";seed=" + std::to_string(seed_);
      if (!forced_prefix_.empty()) s += ";prefix=" + format_word(forced_prefix_);
      break;
    case SystemKind::periodic: s = "periodic:" + format_word(word_); break;
    case SystemKind::explicit_word: s = "explicit:" + format_word(word_); break;
    case SystemKind::rotation:
      s = "rotation:alpha=" + format_real(alpha_) + ";theta=" + format_real(phase_);
      break;
  }
  if (offset_ != 0) s += ";shift=" + std::to_string(offset_);
  return s;
}

Word orbit_word(const OrbitSource& source, std::size_t start, std::size_t len) {
  if (!source.is_symbolic()) {
    throw Error(ErrorCode::incompatible_sources, "orbit_word: rotation orbits are not symbolic");
  }
  const std::uint64_t base = source.offset() + start;
  Word out(len);
  switch (source.kind()) {
    case SystemKind::substitution: {
      if (len == 0) break;
      const Word prefix = substitution_word(source.rules(), static_cast<std::size_t>(base) + len);
      std::copy(prefix.begin() + static_cast<std::ptrdiff_t>(base), prefix.end(), out.begin());
      break;
    }
    case SystemKind::sturmian:
      for (std::size_t k = 0; k < len; ++k) out[k] = sturmian_symbol(source.alpha(), source.phase(), base + k);
      break;
    case SystemKind::bernoulli: {
      const Word& prefix = source.forced_prefix();
      const std::uint64_t p0 = source.prefix_start();
      for (std::size_t k = 0; k < len; ++k) {
        const std::uint64_t idx = base + k;
        out[k] = (idx >= p0 && idx - p0 < prefix.size())
                     ? prefix[static_cast<std::size_t>(idx - p0)]
                     : bernoulli_symbol(source.seed(), source.probability(), idx);
      }
      break;
    }
    case SystemKind::periodic: {
      const Word& period = source.word();
      for (std::size_t k = 0; k < len; ++k) out[k] = period[static_cast<std::size_t>((base + k) % period.size())];
      break;
    }
    case SystemKind::explicit_word: {
      const Word& w = source.word();
      if (base > w.size() || w.size() - base < len) {
        throw Error(ErrorCode::input_length, "orbit_word: explicit word has " + std::to_string(w.size()) +
                                                 " symbols, requested up to index " + std::to_string(base + len));
      }
      std::copy_n(w.begin() + static_cast<std::ptrdiff_t>(base), len, out.begin());
      break;
    }
    case SystemKind::rotation: break;
  }
  return out;
}

std::vector<double> orbit_points(const OrbitSource& source, std::size_t start, std::size_t len) {
  if (source.kind() != SystemKind::rotation) {
    throw Error(ErrorCode::incompatible_sources, "orbit_points: source is symbolic");
  }
  std::vector<double> points(len);
  const std::uint64_t base = source.offset() + start;
  for (std::size_t k = 0; k < len; ++k) points[k] = rotation_point(source.alpha(), source.phase(), base + k);
  return points;
}

}  // namespace fkdist
