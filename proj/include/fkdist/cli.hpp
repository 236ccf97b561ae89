#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fkdist/systems.hpp"

namespace fkdist::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Environment variable naming the directory for relative or implicit
/// output paths.
inline constexpr const char* kOutputDirEnv = "FKDIST_OUTPUT_DIR";

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kIoError = 3 };

/// Thrown for invalid configurations; `field` names the offending flag.
struct ConfigError {
  std::string field;
  std::string message;
};

/// Six fractional digits, correctly rounded (ties to even), no locale.
std::string format_real(double value);

/// Decimal literal or the token `golden`.
double parse_real(std::string_view text, const std::string& field);

/// Comma-separated list of reals or positive integers.
std::vector<double> parse_real_list(std::string_view text, const std::string& field);
std::vector<std::size_t> parse_count_list(std::string_view text, const std::string& field);

/// Word literal: digits 0-9 then letters a-z map to symbols 0..35.
Word parse_word(std::string_view text, const std::string& field);

/// Per-flag parameter overrides applied to the primary system.
struct SystemOverrides {
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<std::string> p;
  std::optional<std::string> theta;
  std::optional<std::uint64_t> seed;
};

/// Parses `name[:args]`, for example `sturmian:alpha=golden,beta=0.25`,
/// `periodic:01`, `substitution:0>01,1>10` or `thue-morse`.
OrbitSource parse_system(std::string_view spec, const SystemOverrides& overrides, const std::string& field);

/// Parses the comparison point: `shift:k` (T^k of the primary) or a system.
OrbitSource parse_companion(std::string_view spec, const OrbitSource& primary, const std::string& field);

/// Full command-line entry point. Tables go to the resolved output file, or
/// to `out` when no destination is configured; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fkdist::cli
