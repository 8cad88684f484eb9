#pragma once

#include <cstdint>

#include "sensorplace/linalg.hpp"

namespace sensorplace {

/// Lumped N-dof structure: M x'' + C x' + K x = f.
///
/// Mass and stiffness are symmetric positive definite, damping is symmetric.
/// Units are kg, N/m and N*s/m.
struct MechanicalSystem {
  RealMatrix mass;
  RealMatrix stiffness;
  RealMatrix damping;

  Index dof() const { return mass.rows(); }

  /// Throws InvalidParameter / Decomposition when the invariants do not hold.
  void validate() const;
};

/// Modal parameters of a MechanicalSystem.
///
/// `mode_shapes` column r is the mass-normalized mode shape of mode r, so
/// Phi^T M Phi = I. Frequencies are angular (rad/s) and strictly ascending.
struct ModalData {
  RealVector natural_freqs;
  RealVector damping_ratios;
  RealMatrix mode_shapes;
  RealMatrix mass;

  Index size() const { return natural_freqs.size(); }
};

struct ChainParams {
  Index n = 50;
  double mass_each = 2.0;
  double stiffness_each = 2.0e6;
  double alpha = 1.0e-4;
  double beta = 1.0e-3;
};

/// Fixed-fixed chain: n masses joined by n+1 identical springs, both ends
/// grounded, with Rayleigh damping C = alpha*M + beta*K.
MechanicalSystem build_chain(const ChainParams& params);

struct IrregularParams {
  Index n = 50;
  std::uint64_t seed = 0;
  double lambda_min = 1.0e5;
  double lambda_max = 1.0e6;
  double zeta_min = 0.01;
  double zeta_max = 0.1;
  /// Strength of the off-diagonal modal coupling in the damping matrix.
  double coupling = 0.5;
  int max_retries = 100;
};

/// Randomized irregular structure.
///
/// M = R^T R with R standard Gaussian; K = Q diag(lambda) Q^T with Q from the
/// QR factorization of a Gaussian matrix and lambda linearly spaced in
/// [lambda_min, lambda_max]. C is a symmetric, non-proportional matrix built
/// in modal coordinates: diag(2 zeta_r omega_r) with zeta_r uniform in
/// [zeta_min, zeta_max], plus a random symmetric coupling of relative size
/// `coupling`. Coupling draws that make C indefinite are resampled.
MechanicalSystem build_irregular(const IrregularParams& params);

/// Generalized symmetric eigenproblem K phi = omega^2 M phi.
///
/// Mode shapes are mass-normalized and sign-fixed so the largest-magnitude
/// entry of each is positive. zeta_r = phi_r^T C phi_r / (2 omega_r), exact
/// for proportional damping and the diagonal approximation otherwise.
ModalData solve_modes(const MechanicalSystem& system);

/// Modal overlap factor 2 zeta_r omega / (omega_{r+1} - omega_r), with r a
/// 0-based mode index in [0, N-2]. Returns +infinity for a repeated
/// eigenvalue (omega_{r+1} == omega_r).
double mof(const ModalData& modal, Index r, double omega);

}  // namespace sensorplace
