#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bkm {

enum class Errc {
  InvalidArgument,
  NonHermitian,
  NoConvergence,
  SingularInput,
  BadLength,
  NotNormalized,
  NegativeSpectrum,
  DegenerateDraw,
  SingularState,
  SupportViolation,
  InvalidMixture,
  BoundViolation,
  NonPositive,
  ZeroVariance,
  DimMismatch,
  OutOfSupport,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bkm
