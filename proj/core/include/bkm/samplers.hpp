#pragma once

#include "bkm/ensemble.hpp"
#include "bkm/linalg.hpp"
#include "bkm/rng.hpp"

namespace bkm {

struct SamplerOptions {
  /// Multiplier on the diagonal of the triangular matrix X. 1 is the
  /// correct law; other values exist for mutation testing of the
  /// verification suite.
  double diagonal_scale = 1.0;
};

/// Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
Complex sample_std_complex_gaussian(RngStream& rng);

/// |g| for a standard real Gaussian g.
double sample_chi1(RngStream& rng);

ComplexMatrix sample_ginibre(int n, RngStream& rng);

/// Haar unitary as the phase-fixed QR factor of a Ginibre matrix.
ComplexMatrix sample_haar_unitary(int n, RngStream& rng);

/// Lower-triangular X: strictly lower entries standard complex Gaussian,
/// X_kk = exp(i phi_k) Y_k / sqrt(2) with Y_k ~ chi_1 and phi_k uniform.
ComplexMatrix sample_triangular_X(int n, RngStream& rng, const SamplerOptions& options = {});

/// Draws one density matrix. BKM consumes X then U, HS consumes A, BH
/// consumes A then U. A draw whose Gram trace is below 1e-14 is redrawn,
/// at most three attempts in total, then DegenerateDraw is raised.
DensityMatrix sample_state(EnsembleKind kind, int n, RngStream& rng,
                           const SamplerOptions& options = {});

/// Spectrum of a draw from `kind`. For the unitarily invariant BKM and HS
/// laws the Haar rotation is skipped since it does not change eigenvalues,
/// so this consumes a different random sequence than sample_state.
Spectrum sample_spectrum(EnsembleKind kind, int n, RngStream& rng,
                         const SamplerOptions& options = {});

struct BipartiteSample {
  /// (U x I)|X> / || |X> ||, row-major over |i>|j>.
  ComplexVector psi;
  /// Tr_B |psi><psi|.
  DensityMatrix reduced;
};

/// Pure state on the doubled space whose reduction is a BKM state. Draws
/// X then U exactly like sample_state(BKM), so two streams with the same
/// key produce matching states.
BipartiteSample sample_pure_bipartite(int n, RngStream& rng, const SamplerOptions& options = {});

}  // namespace bkm
