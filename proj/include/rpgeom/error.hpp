#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpgeom {

enum class ErrorKind {
  SyntaxError,
  UnknownIdentifier,
  InvalidChart,
  ChartMismatch,
  DivisionByZeroField,
  IndexOutOfRange,
  PoleAtPoint,
  SingularMatrix,
  DimensionMismatch,
  DegreeOverflow,
  DegreeUnderflow,
  InternalInconsistency,
  NotSymmetric,
  NotAntisymmetric,
  NotPositiveDefiniteAt,
  SingularMetric,
  RankNotConstant,
  RankOdd,
  SingularLeafwiseForm,
  NotBasic,
  NotInvolutive,
  NotLeafwiseClosed,
  DegenerateOmegaAt,
  InvarianceFails,
  NotBundleLike,
  OmegaNotTangential,
  Inconclusive,
  CertificationFailed,
  WindowTooSmall,
  NonPolynomial,
  SchemaError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the engine. `kind()` is stable and used by the
/// CLI to pick exit codes; `what()` carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& detail);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace rpgeom
