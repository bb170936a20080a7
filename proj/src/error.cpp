#include "lnhom/error.hpp"

namespace lnhom {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonIntegrableRegime: return "NonIntegrableRegime";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::EmbeddingNotPSD: return "EmbeddingNotPSD";
    case ErrorCode::GridTooShort: return "GridTooShort";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument:
      return 2;
    case ErrorCode::Io:
      return 4;
    default:
      return 3;
  }
}

}  // namespace lnhom
