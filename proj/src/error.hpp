#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plasmon {

/// Failure categories. The C API and the CLI map these onto status and exit codes.
enum class ErrorKind {
  Config,           // malformed or unknown configuration
  Input,            // argument outside an operation's domain
  Shape,            // grid / band-limit / dimension mismatch
  Geometry,         // curve not closed, simple, or star-shaped
  Perturbation,     // shifted boundary self-intersects
  RescaleRequired,  // single layer operator singular (log capacity one)
  Degeneracy,       // spectral degeneracy that the operation cannot resolve
  Splitting,        // degenerate eigenspace without a diagonalizing branch
  EInfinity,        // quotient denominator vanishes (interior constant)
  Numerical,        // factorization / solver failure
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying the module, the operation and the contract that failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string operation, const std::string& message)
      : std::runtime_error(module + "::" + operation + ": " + message),
        kind_(kind),
        module_(std::move(module)),
        operation_(std::move(operation)),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string operation_;
  std::string detail_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Input: return "input";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::Perturbation: return "perturbation";
    case ErrorKind::RescaleRequired: return "rescale-required";
    case ErrorKind::Degeneracy: return "degeneracy";
    case ErrorKind::Splitting: return "splitting";
    case ErrorKind::EInfinity: return "e-infinity";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace plasmon
