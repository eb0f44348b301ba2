#include "schmidtkit/error.hpp"

namespace schmidtkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidBipartition: return "InvalidBipartition";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::CoeffsExceedDimension: return "CoeffsExceedDimension";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::TooFewParties: return "TooFewParties";
    case ErrorKind::InvalidMixture: return "InvalidMixture";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace schmidtkit
