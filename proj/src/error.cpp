#include "rpgeom/error.hpp"

namespace rpgeom {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::InvalidChart: return "InvalidChart";
    case ErrorKind::ChartMismatch: return "ChartMismatch";
    case ErrorKind::DivisionByZeroField: return "DivisionByZeroField";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::DegreeUnderflow: return "DegreeUnderflow";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::NotPositiveDefiniteAt: return "NotPositiveDefiniteAt";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::RankNotConstant: return "RankNotConstant";
    case ErrorKind::RankOdd: return "RankOdd";
    case ErrorKind::SingularLeafwiseForm: return "SingularLeafwiseForm";
    case ErrorKind::NotBasic: return "NotBasic";
    case ErrorKind::NotInvolutive: return "NotInvolutive";
    case ErrorKind::NotLeafwiseClosed: return "NotLeafwiseClosed";
    case ErrorKind::DegenerateOmegaAt: return "DegenerateOmegaAt";
    case ErrorKind::InvarianceFails: return "InvarianceFails";
    case ErrorKind::NotBundleLike: return "NotBundleLike";
    case ErrorKind::OmegaNotTangential: return "OmegaNotTangential";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NonPolynomial: return "NonPolynomial";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& detail)
    : Error(ErrorKind::SyntaxError, detail + " at offset " + std::to_string(offset)),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace rpgeom
