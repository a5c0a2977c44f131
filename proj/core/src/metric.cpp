#include "bkm/metric.hpp"

#include <cmath>
#include <string>

#include "bkm/error.hpp"
#include "bkm/stats.hpp"

namespace bkm {

namespace {

constexpr double kSingularEigenvalue = 1e-12;
constexpr double kSupportTolerance = 1e-12;

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw Error(Errc::DimMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

DensityMatrix shifted(const DensityMatrix& rho, const TangentMatrix& drho, double t) {
  try {
    return DensityMatrix::from_hermitian(rho.matrix() + t * drho.matrix());
  } catch (const Error& e) {
    if (e.code() == Errc::NegativeSpectrum) throw Error(Errc::InvalidMixture, e.what());
    throw;
  }
}

}  // namespace

TangentMatrix TangentMatrix::from(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(Errc::InvalidArgument, "TangentMatrix: expected a square matrix");
  }
  if (!is_hermitian(m)) {
    throw Error(Errc::NonHermitian,
                "TangentMatrix: defect " + std::to_string(hermiticity_defect(m)));
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  if (std::abs(h.trace()) > kHermitianTolerance) {
    throw Error(Errc::InvalidArgument, "TangentMatrix: trace must vanish");
  }
  return TangentMatrix(std::move(h));
}

double bkm_kernel(double a, double b) {
  const double m = 0.5 * (a + b);
  const double d = a - b;
  if (std::abs(d) < 1e-6 * m) return 1.0 / m + d * d / (12.0 * m * m * m);
  return std::log1p(d / b) / d;
}

double bkm_line_element(const DensityMatrix& rho, const TangentMatrix& drho) {
  require_same_dim(rho.dim(), drho.dim(), "bkm_line_element");
  const Spectrum spectrum = rho.spectrum(true);
  if (spectrum.min() <= kSingularEigenvalue) {
    throw Error(Errc::SingularState,
                "bkm_line_element: eigenvalue " + std::to_string(spectrum.min()));
  }
  const ComplexMatrix& v = *spectrum.eigenvectors;
  const ComplexMatrix rotated = v.adjoint() * drho.matrix() * v;
  const RealVector& r = spectrum.eigenvalues;
  double ds2 = 0.0;
  for (Eigen::Index nu = 0; nu < r.size(); ++nu) {
    for (Eigen::Index mu = 0; mu < r.size(); ++mu) {
      ds2 += bkm_kernel(r(nu), r(mu)) * std::norm(rotated(mu, nu));
    }
  }
  return ds2;
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy(rho.spectrum()); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
  const Spectrum sigma_spec = sigma.spectrum(true);
  const ComplexMatrix& v = *sigma_spec.eigenvectors;
  const ComplexMatrix rho_in_sigma_basis = v.adjoint() * rho.matrix() * v;
  double cross = 0.0;  // Tr rho ln sigma
  for (Eigen::Index j = 0; j < sigma_spec.eigenvalues.size(); ++j) {
    const double weight = rho_in_sigma_basis(j, j).real();
    const double s = sigma_spec.eigenvalues(j);
    if (s <= kSupportTolerance) {
      if (weight > kSupportTolerance) {
        throw Error(Errc::SupportViolation,
                    "relative_entropy: weight " + std::to_string(weight) +
                        " on a null direction of sigma");
      }
      continue;
    }
    cross += weight * std::log(s);
  }
  return -von_neumann_entropy(rho) - cross;
}

double mixing_information_loss(const DensityMatrix& rho, const TangentMatrix& drho) {
  require_same_dim(rho.dim(), drho.dim(), "mixing_information_loss");
  const DensityMatrix lo = shifted(rho, drho, -0.5);
  const DensityMatrix hi = shifted(rho, drho, 0.5);
  return von_neumann_entropy(rho) - 0.5 * (von_neumann_entropy(lo) + von_neumann_entropy(hi));
}

}  // namespace bkm
