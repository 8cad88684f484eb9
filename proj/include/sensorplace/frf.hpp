#pragma once

#include <optional>

#include "sensorplace/linalg.hpp"
#include "sensorplace/modal_model.hpp"

namespace sensorplace {

/// Accelerance matrix H(omega), (m/s^2)/N. Entry (a, b) links a force at
/// node cols[b] to the response at node rows[a].
struct FrfMatrix {
  double omega = 0.0;
  IndexList rows;
  IndexList cols;
  ComplexMatrix values;

  void validate(Index n_dof = -1) const;
};

/// Column-normalized FRF: h_bar = H F with F = diag(1 / col_norms).
struct NormalizedFrf {
  double omega = 0.0;
  IndexList rows;
  IndexList cols;
  ComplexMatrix h_bar;
  RealVector col_norms;
};

/// Modal superposition
///   h_mn = sum_r -omega^2 phi_mr phi_nr / (omega_r^2 - omega^2 + j 2 zeta_r omega_r omega)
/// over `mode_subset` (all modes when empty optional).
FrfMatrix frf_modal(const ModalData& modal, const IndexList& rows,
                    const IndexList& cols, double omega,
                    const std::optional<IndexList>& mode_subset = std::nullopt);

/// Exact accelerance -omega^2 (K - omega^2 M + j omega C)^{-1}, restricted to
/// rows x cols. Valid for non-proportional damping.
FrfMatrix frf_direct(const MechanicalSystem& system, const IndexList& rows,
                     const IndexList& cols, double omega);

/// Scales every column to unit l2 norm. A column whose norm is below
/// 1e-300 * (largest column norm) is reported as degenerate.
NormalizedFrf normalize_columns(const FrfMatrix& frf);

/// Keeps only the listed rows (given as node indices present in frf.rows).
FrfMatrix select_rows(const FrfMatrix& frf, const IndexList& nodes);

}  // namespace sensorplace
