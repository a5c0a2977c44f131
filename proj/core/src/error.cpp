#include "bkm/error.hpp"

namespace bkm {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::SingularInput: return "SingularInput";
    case Errc::BadLength: return "BadLength";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NegativeSpectrum: return "NegativeSpectrum";
    case Errc::DegenerateDraw: return "DegenerateDraw";
    case Errc::SingularState: return "SingularState";
    case Errc::SupportViolation: return "SupportViolation";
    case Errc::InvalidMixture: return "InvalidMixture";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::NonPositive: return "NonPositive";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::OutOfSupport: return "OutOfSupport";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace bkm
