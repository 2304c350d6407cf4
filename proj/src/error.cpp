#include "qverify/error.hpp"

namespace qverify {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotProjector: return "NotProjector";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::TargetNotFixed: return "TargetNotFixed";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::NonSeparable: return "NonSeparable";
    case ErrorCode::ThetaOutOfDomain: return "ThetaOutOfDomain";
    case ErrorCode::ThetaNearSpecialValue: return "ThetaNearSpecialValue";
    case ErrorCode::DegenerateStrategy: return "DegenerateStrategy";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::InconsistentSigns: return "InconsistentSigns";
    case ErrorCode::ImaginaryPhase: return "ImaginaryPhase";
    case ErrorCode::UndefinedDivergence: return "UndefinedDivergence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace qverify
