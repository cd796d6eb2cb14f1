#include "puresep/error.hpp"

namespace puresep {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadSubset: return "BadSubset";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::CriterionDisagreement: return "CriterionDisagreement";
  }
  return "Unknown";
}

}  // namespace puresep
