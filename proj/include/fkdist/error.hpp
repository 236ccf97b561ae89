#pragma once

#include <stdexcept>
#include <string>

namespace fkdist {

enum class ErrorCode {
  invalid_argument,
  invalid_rules,
  non_expanding,
  input_length,
  length_mismatch,
  incompatible_sources,
  invalid_grid,
  invalid_ball,
  guard_exceeded,
};

/// Exception carrying a machine-readable cause alongside the message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace fkdist
