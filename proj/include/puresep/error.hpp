#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace puresep {

enum class ErrorCode {
  InvalidArgument,
  ZeroState,
  BadIndex,
  BadPermutation,
  DimMismatch,
  BadDimension,
  BadSubset,
  BadSpec,
  Parse,
  NotSeparable,
  CriterionDisagreement,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every exception thrown by the library. The code maps one-to-one
/// onto the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by factorize() when at least one partite fails the norm criterion.
class NotSeparableError : public Error {
 public:
  NotSeparableError(std::vector<std::size_t> failing, const std::string& what)
      : Error(ErrorCode::NotSeparable, what), failing_(std::move(failing)) {}

  /// 0-based indices of the partites whose reduced state is not pure.
  const std::vector<std::size_t>& failing_partites() const noexcept {
    return failing_;
  }

 private:
  std::vector<std::size_t> failing_;
};

/// The norm and minor criteria disagree on a partite outside the borderline
/// band. Means the tolerance is miscalibrated for the input.
class CriterionDisagreementError : public Error {
 public:
  CriterionDisagreementError(std::size_t partite, double deficit,
                             double minor_maximum, const std::string& what)
      : Error(ErrorCode::CriterionDisagreement, what),
        partite_(partite),
        deficit_(deficit),
        minor_maximum_(minor_maximum) {}

  std::size_t partite() const noexcept { return partite_; }
  double deficit() const noexcept { return deficit_; }
  double minor_maximum() const noexcept { return minor_maximum_; }

 private:
  std::size_t partite_;
  double deficit_;
  double minor_maximum_;
};

}  // namespace puresep
