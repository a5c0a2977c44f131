#pragma once

// Dense complex linear algebra for random density matrices: Hermitian
// eigendecomposition, QR with a fixed phase gauge, partial trace and the
// validated DensityMatrix value type.

#include <complex>
#include <optional>
#include <span>

#include <Eigen/Dense>

namespace bkm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues in ascending order, optionally with the unitary whose
/// columns are the matching eigenvectors.
struct Spectrum {
  RealVector eigenvalues;
  std::optional<ComplexMatrix> eigenvectors;

  int dim() const noexcept { return static_cast<int>(eigenvalues.size()); }
  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
  std::span<const double> values() const noexcept {
    return {eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())};
  }
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-12;
// Eigenvalues in [-kClampTolerance, 0) are rounding noise and are set to 0.
inline constexpr double kClampTolerance = 1e-10;

/// max_ij |M_ij - conj(M_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

/// Hermitian within kHermitianTolerance * (1 + max |entry|).
bool is_hermitian(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Throws NonHermitian when the tolerance is exceeded and NoConvergence
/// when the iterative solver gives up.
Spectrum eig_hermitian(const ComplexMatrix& h, bool want_vectors = false);

/// V diag(lambda) V^dagger; requires eigenvectors.
ComplexMatrix reconstruct(const Spectrum& spectrum);

/// Unitary factor Q of A = QR with column k of Q multiplied by
/// R_kk / |R_kk|, i.e. the QR factorization whose R has a positive
/// diagonal. For Ginibre A the result is Haar distributed.
ComplexMatrix qr_unitary_factor(const ComplexMatrix& a);

/// Applies the clamping rule to a spectrum that should lie on the simplex:
/// eigenvalues in [-kClampTolerance, 0) become 0, the sum is renormalized to
/// 1, anything more negative raises NegativeSpectrum.
Spectrum clamp_to_simplex(Spectrum spectrum);

/// Hermitian, unit trace, positive semidefinite N x N matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and the spectrum; eigenvalues inside
  /// the clamp window are zeroed and the matrix rebuilt.
  static DensityMatrix from_hermitian(const ComplexMatrix& m);

  /// rho = B B^dagger / Tr(B B^dagger). Positive by construction, so only
  /// the trace is checked (DegenerateDraw when it is below 1e-14).
  static DensityMatrix from_gram(const ComplexMatrix& b);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

  /// Clamped spectrum; sums to one.
  Spectrum spectrum(bool want_vectors = false) const;

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Reduction of a bipartite pure state onto its first factor. The state is
/// indexed row-major: |i>|k> sits at position i * dim_a + k.
DensityMatrix partial_trace_second(std::span<const Complex> psi, int dim_a);

}  // namespace bkm
