#include "tetralab/error.hpp"

namespace tetralab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeExceedsSpec:
      return "degree-exceeds-spec";
    case ErrorCode::RankDeficient:
      return "rank-deficient";
    case ErrorCode::GramSchmidtBreakdown:
      return "gram-schmidt-breakdown";
    case ErrorCode::WindowTooSmall:
      return "window-too-small";
    case ErrorCode::ParityViolation:
      return "parity-violation";
    case ErrorCode::SingularDictionary:
      return "singular-dictionary";
    case ErrorCode::Parse:
      return "parse-error";
    case ErrorCode::Io:
      return "io-error";
    case ErrorCode::Validation:
      return "validation-error";
  }
  return "unknown";
}

}  // namespace tetralab
