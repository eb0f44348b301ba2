#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schmidtkit {

enum class ErrorKind {
  NotHermitian,
  NonFinite,
  ZeroVector,
  ShapeMismatch,
  InvalidBipartition,
  NotUnitary,
  DimensionMismatch,
  CoeffsExceedDimension,
  NotNormalized,
  TooFewParties,
  InvalidMixture,
  InvalidArgument,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace schmidtkit
