#pragma once

#include "sensorplace/frf.hpp"
#include "sensorplace/linalg.hpp"
#include "sensorplace/modal_model.hpp"

namespace sensorplace {

/// Coherence matrix G = H_bar^H H_bar of a (possibly row-reduced) normalized
/// FRF. |G_ij| is the cosine between basis vectors i and j when the supplied
/// columns are unit norm.
struct GramMatrix {
  double omega = 0.0;
  IndexList sensor_rows;
  ComplexMatrix values;
};

struct GramNorms {
  double frobenius = 0.0;
  double offdiag_frobenius = 0.0;
  /// Mutual coherence max_{i != j} |G_ij|.
  double max_offdiag = 0.0;
};

GramMatrix gram(const NormalizedFrf& h_bar);

/// Gram of an arbitrary matrix (e.g. a row subset of a normalized FRF whose
/// columns are no longer unit norm).
GramMatrix gram(const ComplexMatrix& h_bar, double omega, IndexList sensor_rows);

/// Single-mode term of the full-measurement Gram decomposition,
///   omega^4 F [ |phi_p|^2 phi_p phi_p^T / |omega_p^2 - omega^2 + j 2 zeta_p omega_p omega|^2 ] F,
/// with F = diag(1 / col_norms). `full` must cover all N rows and columns.
ComplexMatrix gram_mode_contribution(const ModalData& modal, Index p,
                                     const NormalizedFrf& full);

/// Sum of gram_mode_contribution over `modes` (non-empty).
ComplexMatrix gram_modal_approx(const ModalData& modal, const IndexList& modes,
                                const NormalizedFrf& full);

GramNorms gram_norms(const ComplexMatrix& g);
inline GramNorms gram_norms(const GramMatrix& g) { return gram_norms(g.values); }

/// Modes whose natural frequency lies within +-window*omega of omega,
/// widened around the nearest mode until at least `min_modes` are included.
IndexList nearby_modes(const ModalData& modal, double omega, double window = 0.5,
                       Index min_modes = 4);

/// ||exact - approx||_F / ||exact||_F
double relative_frobenius_error(const ComplexMatrix& exact, const ComplexMatrix& approx);

}  // namespace sensorplace
