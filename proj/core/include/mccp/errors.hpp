#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mccp {

enum class ErrorCode {
  EmptySet,
  TooLarge,
  DimensionMismatch,
  InvalidArgument,
  InvalidSpec,
  NotStochastic,
  NotCM,
  NotCG,
  NotGenerator,
  NotEmbeddable,
  SingularMatrix,
  DegenerateIndependent,
  ConditionOnNullEvent,
  OutOfConvergenceRegion,
  NonConvergence,
  SpectralRadiusTooLarge,
  Unreachable,
  InvalidSchedule,
};

// Single error type for the whole library. Structural mismatches carry the
// offending entry as a witness; everything else is in the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  Error(ErrorCode code, const std::string& msg, std::uint32_t row,
        std::uint32_t col, double deviation)
      : std::runtime_error(msg),
        code_(code),
        witness_row_(row),
        witness_col_(col),
        deviation_(deviation) {}

  ErrorCode code() const noexcept { return code_; }
  std::uint32_t witness_row() const noexcept { return witness_row_; }
  std::uint32_t witness_col() const noexcept { return witness_col_; }
  double deviation() const noexcept { return deviation_; }

 private:
  ErrorCode code_;
  std::uint32_t witness_row_ = 0;
  std::uint32_t witness_col_ = 0;
  double deviation_ = 0.0;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace mccp
