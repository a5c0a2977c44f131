#include "bkm/samplers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "bkm/error.hpp"

namespace bkm {

namespace {

constexpr int kMaxDrawAttempts = 3;

void require_dim(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "dimension must be >= 1");
}

template <typename Draw>
auto with_redraw(Draw&& draw) {
  for (int attempt = 1;; ++attempt) {
    try {
      return draw();
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateDraw || attempt >= kMaxDrawAttempts) throw;
    }
  }
}

ComplexMatrix gram_lower(const ComplexMatrix& b) {
  ComplexMatrix lower = ComplexMatrix::Zero(b.rows(), b.rows());
  lower.selfadjointView<Eigen::Lower>().rankUpdate(b);
  return lower;
}

// Eigenvalues of B B^dagger / Tr(B B^dagger) without forming the full matrix.
Spectrum gram_spectrum(const ComplexMatrix& b) {
  ComplexMatrix lower = gram_lower(b);
  const double trace = lower.diagonal().real().sum();
  if (!(trace >= 1e-14) || !std::isfinite(trace)) {
    throw Error(Errc::DegenerateDraw, "Gram trace " + std::to_string(trace));
  }
  lower /= trace;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(lower, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NoConvergence, "sample_spectrum: eigensolver failed");
  }
  Spectrum out;
  out.eigenvalues = solver.eigenvalues();
  return clamp_to_simplex(std::move(out));
}

ComplexMatrix bures_factor(int n, RngStream& rng) {
  const ComplexMatrix a = sample_ginibre(n, rng);
  ComplexMatrix u = sample_haar_unitary(n, rng);
  u.diagonal().array() += 1.0;
  return u * a;
}

}  // namespace

std::string_view to_string(EnsembleKind kind) noexcept {
  switch (kind) {
    case EnsembleKind::BKM: return "bkm";
    case EnsembleKind::HS: return "hs";
    case EnsembleKind::BH: return "bh";
  }
  return "?";
}

std::optional<EnsembleKind> parse_ensemble(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "bkm") return EnsembleKind::BKM;
  if (lower == "hs") return EnsembleKind::HS;
  if (lower == "bh") return EnsembleKind::BH;
  return std::nullopt;
}

Complex sample_std_complex_gaussian(RngStream& rng) {
  constexpr double kScale = std::numbers::sqrt2 / 2.0;
  const double re = rng.normal();
  const double im = rng.normal();
  return {kScale * re, kScale * im};
}

double sample_chi1(RngStream& rng) { return std::abs(rng.normal()); }

ComplexMatrix sample_ginibre(int n, RngStream& rng) {
  require_dim(n);
  ComplexMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) a(i, j) = sample_std_complex_gaussian(rng);
  }
  return a;
}

ComplexMatrix sample_haar_unitary(int n, RngStream& rng) {
  return with_redraw([&] {
    try {
      return qr_unitary_factor(sample_ginibre(n, rng));
    } catch (const Error& e) {
      if (e.code() == Errc::SingularInput) throw Error(Errc::DegenerateDraw, e.what());
      throw;
    }
  });
}

ComplexMatrix sample_triangular_X(int n, RngStream& rng, const SamplerOptions& options) {
  require_dim(n);
  if (!(options.diagonal_scale >= 0.0)) {
    throw Error(Errc::InvalidArgument, "diagonal_scale must be non-negative");
  }
  const double diagonal = options.diagonal_scale * std::numbers::sqrt2 / 2.0;
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double y = sample_chi1(rng);
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    x(j, j) = std::polar(diagonal * y, phase);
    for (int i = j + 1; i < n; ++i) x(i, j) = sample_std_complex_gaussian(rng);
  }
  return x;
}

DensityMatrix sample_state(EnsembleKind kind, int n, RngStream& rng,
                           const SamplerOptions& options) {
  require_dim(n);
  return with_redraw([&] {
    switch (kind) {
      case EnsembleKind::BKM: {
        const ComplexMatrix x = sample_triangular_X(n, rng, options);
        const ComplexMatrix u = sample_haar_unitary(n, rng);
        return DensityMatrix::from_gram(u * x);
      }
      case EnsembleKind::HS:
        return DensityMatrix::from_gram(sample_ginibre(n, rng));
      case EnsembleKind::BH:
        return DensityMatrix::from_gram(bures_factor(n, rng));
    }
    throw Error(Errc::InvalidArgument, "unknown ensemble");
  });
}

Spectrum sample_spectrum(EnsembleKind kind, int n, RngStream& rng,
                         const SamplerOptions& options) {
  require_dim(n);
  return with_redraw([&] {
    switch (kind) {
      case EnsembleKind::BKM: return gram_spectrum(sample_triangular_X(n, rng, options));
      case EnsembleKind::HS: return gram_spectrum(sample_ginibre(n, rng));
      case EnsembleKind::BH: return gram_spectrum(bures_factor(n, rng));
    }
    throw Error(Errc::InvalidArgument, "unknown ensemble");
  });
}

BipartiteSample sample_pure_bipartite(int n, RngStream& rng, const SamplerOptions& options) {
  require_dim(n);
  return with_redraw([&] {
    const ComplexMatrix x = sample_triangular_X(n, rng, options);
    const ComplexMatrix u = sample_haar_unitary(n, rng);
    // (U x I) acting on the row-major coefficient matrix X is U X.
    const ComplexMatrix rotated = u * x;
    const double norm = rotated.norm();
    if (!(norm * norm >= 1e-14)) {
      throw Error(Errc::DegenerateDraw, "|X> has vanishing norm");
    }
    ComplexVector psi(static_cast<Eigen::Index>(n) * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) psi(static_cast<Eigen::Index>(i) * n + j) = rotated(i, j) / norm;
    }
    DensityMatrix reduced = partial_trace_second({psi.data(), static_cast<std::size_t>(psi.size())}, n);
    return BipartiteSample{std::move(psi), std::move(reduced)};
  });
}

}  // namespace bkm
