#include "bkm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bkm/error.hpp"

namespace bkm {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(Errc::InvalidArgument,
                std::string(what) + ": expected a non-empty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Full Hermitian matrix from its lower triangle.
ComplexMatrix hermitian_from_lower(const ComplexMatrix& lower) {
  ComplexMatrix full = lower.selfadjointView<Eigen::Lower>();
  for (Eigen::Index i = 0; i < full.rows(); ++i) full(i, i).imag(0.0);
  return full;
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
  double defect = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = j; i < m.rows(); ++i) {
      defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return defect;
}

bool is_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  return hermiticity_defect(m) <= kHermitianTolerance * scale;
}

bool all_finite(const ComplexMatrix& m) {
  return m.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
      .all();
}

Spectrum eig_hermitian(const ComplexMatrix& h, bool want_vectors) {
  require_square(h, "eig_hermitian");
  if (!all_finite(h)) throw Error(Errc::InvalidArgument, "eig_hermitian: non-finite entry");
  if (!is_hermitian(h)) {
    throw Error(Errc::NonHermitian,
                "eig_hermitian: defect " + std::to_string(hermiticity_defect(h)));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      h, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NoConvergence, "eig_hermitian: QL iteration cap reached");
  }
  Spectrum out;
  out.eigenvalues = solver.eigenvalues();
  if (want_vectors) out.eigenvectors = solver.eigenvectors();
  return out;
}

ComplexMatrix reconstruct(const Spectrum& spectrum) {
  if (!spectrum.eigenvectors) {
    throw Error(Errc::InvalidArgument, "reconstruct: spectrum carries no eigenvectors");
  }
  const ComplexMatrix& v = *spectrum.eigenvectors;
  return v * spectrum.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix qr_unitary_factor(const ComplexMatrix& a) {
  require_square(a, "qr_unitary_factor");
  const Eigen::Index n = a.rows();
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  const ComplexMatrix& packed = qr.matrixQR();
  ComplexMatrix q = qr.householderQ();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex rkk = packed(k, k);
    const double magnitude = std::abs(rkk);
    if (magnitude < 1e-14) {
      throw Error(Errc::SingularInput,
                  "qr_unitary_factor: |R_kk| = " + std::to_string(magnitude) +
                      " at k = " + std::to_string(k));
    }
    q.col(k) *= rkk / magnitude;
  }
  return q;
}

Spectrum clamp_to_simplex(Spectrum spectrum) {
  RealVector& r = spectrum.eigenvalues;
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    if (r(k) < -kClampTolerance) {
      throw Error(Errc::NegativeSpectrum,
                  "eigenvalue " + std::to_string(r(k)) + " below -1e-10");
    }
    if (r(k) < 0.0) r(k) = 0.0;
  }
  const double total = r.sum();
  if (!(total > 0.0)) throw Error(Errc::NotNormalized, "spectrum sums to zero");
  r /= total;
  return spectrum;
}

DensityMatrix DensityMatrix::from_hermitian(const ComplexMatrix& m) {
  require_square(m, "DensityMatrix");
  if (!all_finite(m)) throw Error(Errc::InvalidArgument, "DensityMatrix: non-finite entry");
  if (!is_hermitian(m)) {
    throw Error(Errc::NonHermitian,
                "DensityMatrix: defect " + std::to_string(hermiticity_defect(m)));
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const Complex trace = h.trace();
  if (std::abs(trace.real() - 1.0) > kTraceTolerance ||
      std::abs(trace.imag()) > kTraceTolerance) {
    throw Error(Errc::NotNormalized,
                "DensityMatrix: trace " + std::to_string(trace.real()) + " differs from 1");
  }
  const Spectrum values = eig_hermitian(h, false);
  if (values.min() < -kClampTolerance) {
    throw Error(Errc::NegativeSpectrum,
                "DensityMatrix: eigenvalue " + std::to_string(values.min()));
  }
  if (values.min() < 0.0) {
    return DensityMatrix(reconstruct(clamp_to_simplex(eig_hermitian(h, true))));
  }
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::from_gram(const ComplexMatrix& b) {
  if (b.rows() == 0) throw Error(Errc::InvalidArgument, "DensityMatrix: empty factor");
  ComplexMatrix lower = ComplexMatrix::Zero(b.rows(), b.rows());
  lower.selfadjointView<Eigen::Lower>().rankUpdate(b);
  const double trace = lower.diagonal().real().sum();
  if (!(trace >= 1e-14) || !std::isfinite(trace)) {
    throw Error(Errc::DegenerateDraw, "DensityMatrix: Gram trace " + std::to_string(trace));
  }
  lower /= trace;
  return DensityMatrix(hermitian_from_lower(lower));
}

Spectrum DensityMatrix::spectrum(bool want_vectors) const {
  return clamp_to_simplex(eig_hermitian(m_, want_vectors));
}

DensityMatrix partial_trace_second(std::span<const Complex> psi, int dim_a) {
  if (dim_a < 1) throw Error(Errc::InvalidArgument, "partial_trace_second: dim_a < 1");
  const auto n = static_cast<std::size_t>(dim_a);
  if (psi.size() != n * n) {
    throw Error(Errc::BadLength, "partial_trace_second: length " + std::to_string(psi.size()) +
                                     " is not " + std::to_string(n) + "^2");
  }
  double norm2 = 0.0;
  for (const Complex& z : psi) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > kTraceTolerance) {
    throw Error(Errc::NotNormalized,
                "partial_trace_second: squared norm " + std::to_string(norm2));
  }
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> coefficients(psi.data(), dim_a, dim_a);
  return DensityMatrix::from_gram(coefficients);
}

}  // namespace bkm
