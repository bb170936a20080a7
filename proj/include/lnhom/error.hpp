#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lnhom {

enum class ErrorCode {
  InvalidArgument,
  NonIntegrableRegime,
  WrongRegime,
  EmbeddingNotPSD,
  GridTooShort,
  DegenerateFit,
  DegenerateSample,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Exit codes: 2 config, 3 numerical failure, 4 IO.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace lnhom
