#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qverify {

enum class ErrorCode {
  NonHermitian,
  BadDim,
  NotNormalized,
  NotUnitary,
  NotProjector,
  InvalidWeights,
  TargetNotFixed,
  NotContraction,
  NonSeparable,
  ThetaOutOfDomain,
  ThetaNearSpecialValue,
  DegenerateStrategy,
  NonCommuting,
  DependentGenerators,
  InconsistentSigns,
  ImaginaryPhase,
  UndefinedDivergence,
  InvalidArgument,
  ParseError,
  TooLarge,
  InvariantViolation,
};

std::string_view error_code_name(ErrorCode code);

// Domain and validation failures. The message is a single line that starts
// with the code name so that callers (the CLI in particular) can forward it
// verbatim as a machine-parsable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace qverify
