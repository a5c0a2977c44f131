#pragma once

#include "bkm/linalg.hpp"

namespace bkm {

/// Hermitian, traceless perturbation of a density matrix.
class TangentMatrix {
 public:
  /// Throws NonHermitian, or InvalidArgument when |Tr| > 1e-10.
  static TangentMatrix from(const ComplexMatrix& m);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  explicit TangentMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// (ln a - ln b) / (a - b), with c(a, a) = 1/a. Inside |a - b| < 1e-6 m,
/// m = (a + b)/2, the series 1/m + (a - b)^2 / (12 m^3) is used instead.
double bkm_kernel(double a, double b);

/// ds^2 = sum_{nu,mu} c(r_nu, r_mu) |<mu| drho |nu>|^2 in the eigenbasis of
/// rho. SingularState when the smallest eigenvalue is <= 1e-12.
double bkm_line_element(const DensityMatrix& rho, const TangentMatrix& drho);

/// -Tr rho ln rho.
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr rho (ln rho - ln sigma). SupportViolation when rho has weight on a
/// null direction of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// S(rho) - [S(rho - drho/2) + S(rho + drho/2)] / 2; InvalidMixture when
/// either endpoint is not a state.
double mixing_information_loss(const DensityMatrix& rho, const TangentMatrix& drho);

}  // namespace bkm
