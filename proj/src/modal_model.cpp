#include "sensorplace/modal_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "sensorplace/errors.hpp"

namespace sensorplace {

IndexList iota_indices(Index n) {
  IndexList out(static_cast<std::size_t>(std::max<Index>(n, 0)));
  for (Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

namespace {

bool is_symmetric(const RealMatrix& a) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0e-300);
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= 1.0e-10 * scale;
}

RealMatrix symmetrized(const RealMatrix& a) { return 0.5 * (a + a.transpose()); }

RealMatrix gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix out(rows, cols);
  // Column-major fill order is part of the seed contract.
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  return out;
}

}  // namespace

void MechanicalSystem::validate() const {
  const Index n = mass.rows();
  require(n >= 1, ErrorCode::InvalidParameter, "system has no degrees of freedom");
  require(mass.cols() == n && stiffness.rows() == n && stiffness.cols() == n &&
              damping.rows() == n && damping.cols() == n,
          ErrorCode::DimensionMismatch, "mass, stiffness and damping must all be N x N");
  require(mass.allFinite() && stiffness.allFinite() && damping.allFinite(),
          ErrorCode::InvalidParameter, "system matrices contain non-finite entries");
  require(is_symmetric(mass), ErrorCode::InvalidParameter, "mass matrix is not symmetric");
  require(is_symmetric(stiffness), ErrorCode::InvalidParameter,
          "stiffness matrix is not symmetric");
  require(is_symmetric(damping), ErrorCode::InvalidParameter, "damping matrix is not symmetric");
  Eigen::LLT<RealMatrix> llt(mass);
  require(llt.info() == Eigen::Success, ErrorCode::Decomposition,
          "mass matrix is not positive definite");
}

MechanicalSystem build_chain(const ChainParams& p) {
  require(p.n >= 2, ErrorCode::InvalidParameter, "chain needs n >= 2");
  require(p.mass_each > 0.0, ErrorCode::InvalidParameter, "chain mass must be positive");
  require(p.stiffness_each > 0.0, ErrorCode::InvalidParameter,
          "chain stiffness must be positive");
  require(p.alpha >= 0.0 && p.beta >= 0.0, ErrorCode::InvalidParameter,
          "Rayleigh coefficients must be non-negative");

  MechanicalSystem s;
  s.mass = p.mass_each * RealMatrix::Identity(p.n, p.n);
  s.stiffness = RealMatrix::Zero(p.n, p.n);
  for (Index i = 0; i < p.n; ++i) {
    s.stiffness(i, i) = 2.0 * p.stiffness_each;
    if (i + 1 < p.n) {
      s.stiffness(i, i + 1) = -p.stiffness_each;
      s.stiffness(i + 1, i) = -p.stiffness_each;
    }
  }
  s.damping = p.alpha * s.mass + p.beta * s.stiffness;
  return s;
}

MechanicalSystem build_irregular(const IrregularParams& p) {
  require(p.n >= 2, ErrorCode::InvalidParameter, "irregular system needs n >= 2");
  require(p.lambda_min > 0.0 && p.lambda_min < p.lambda_max, ErrorCode::InvalidParameter,
          "need 0 < lambda_min < lambda_max");
  require(p.zeta_min > 0.0 && p.zeta_min < p.zeta_max && p.zeta_max < 1.0,
          ErrorCode::InvalidParameter, "need 0 < zeta_min < zeta_max < 1");
  require(p.coupling >= 0.0, ErrorCode::InvalidParameter, "coupling must be non-negative");
  require(p.max_retries >= 1, ErrorCode::InvalidParameter, "max_retries must be >= 1");

  const Index n = p.n;
  std::mt19937_64 rng(p.seed);

  MechanicalSystem s;
  const RealMatrix r = gaussian_matrix(rng, n, n);
  s.mass = symmetrized(r.transpose() * r);

  Eigen::HouseholderQR<RealMatrix> qr(gaussian_matrix(rng, n, n));
  RealMatrix q = qr.householderQ();
  // Make Q unique: R with a positive diagonal.
  const RealMatrix r_factor = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r_factor(j, j) < 0.0) q.col(j) *= -1.0;
  const RealVector lambda = RealVector::LinSpaced(n, p.lambda_min, p.lambda_max);
  s.stiffness = symmetrized(q * lambda.asDiagonal() * q.transpose());

  s.damping = RealMatrix::Zero(n, n);
  const ModalData undamped = solve_modes(s);

  std::uniform_real_distribution<double> uniform(p.zeta_min, p.zeta_max);
  RealVector zeta(n);
  for (Index i = 0; i < n; ++i) zeta(i) = uniform(rng);
  const RealVector scale = (2.0 * zeta.cwiseProduct(undamped.natural_freqs)).cwiseSqrt();

  double worst_eig = std::numeric_limits<double>::quiet_NaN();
  for (int attempt = 0; attempt < p.max_retries; ++attempt) {
    RealMatrix e = gaussian_matrix(rng, n, n);
    e = (e + e.transpose()) / std::sqrt(2.0);
    e.diagonal().setZero();
    e /= 2.0 * std::sqrt(static_cast<double>(n));
    const RealMatrix coupling = RealMatrix::Identity(n, n) + p.coupling * e;
    const double min_eig = Eigen::SelfAdjointEigenSolver<RealMatrix>(coupling, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
    worst_eig = attempt == 0 ? min_eig : std::max(worst_eig, min_eig);
    if (min_eig <= 0.0) continue;

    const RealMatrix modal_damping = scale.asDiagonal() * coupling * scale.asDiagonal();
    const RealMatrix m_phi = s.mass * undamped.mode_shapes;
    s.damping = symmetrized(m_phi * modal_damping * m_phi.transpose());

    const RealVector achieved = solve_modes(s).damping_ratios;
    const double lo = achieved.minCoeff();
    const double hi = achieved.maxCoeff();
    constexpr double slack = 1.0e-9;
    if (lo >= p.zeta_min * (1.0 - slack) && hi <= p.zeta_max * (1.0 + slack)) return s;

    std::ostringstream msg;
    msg << "irregular system: achieved zeta range [" << lo << ", " << hi
        << "] outside [" << p.zeta_min << ", " << p.zeta_max << "]";
    fail(ErrorCode::ConstructionFailed, msg.str());
  }
  std::ostringstream msg;
  msg << "irregular system: no positive-definite damping coupling after " << p.max_retries
      << " draws (best min eigenvalue " << worst_eig << ")";
  fail(ErrorCode::ConstructionFailed, msg.str());
}

ModalData solve_modes(const MechanicalSystem& system) {
  system.validate();
  const Index n = system.dof();

  Eigen::GeneralizedSelfAdjointEigenSolver<RealMatrix> solver(
      system.stiffness, system.mass, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  require(solver.info() == Eigen::Success, ErrorCode::Decomposition,
          "generalized eigensolver failed");

  const RealVector& omega_sq = solver.eigenvalues();
  const double largest = std::max(omega_sq.cwiseAbs().maxCoeff(), 1.0e-300);
  for (Index r = 0; r < n; ++r) {
    if (omega_sq(r) <= 1.0e-12 * largest) {
      fail(ErrorCode::RigidBodyMode,
           "mode " + std::to_string(r) + " has (near) zero natural frequency; damping ratio undefined");
    }
  }

  ModalData modal;
  modal.natural_freqs = omega_sq.cwiseSqrt();
  modal.mode_shapes = solver.eigenvectors();
  modal.mass = system.mass;
  modal.damping_ratios.resize(n);
  for (Index r = 0; r < n; ++r) {
    auto phi = modal.mode_shapes.col(r);
    // Antisymmetric shapes have two peaks of equal magnitude and opposite
    // sign; take the first one so rounding cannot flip the convention.
    const double peak_abs = phi.cwiseAbs().maxCoeff();
    Index peak = 0;
    while (std::abs(phi(peak)) < (1.0 - 1.0e-9) * peak_abs) ++peak;
    if (phi(peak) < 0.0) phi *= -1.0;
    modal.damping_ratios(r) =
        phi.dot(system.damping * phi) / (2.0 * modal.natural_freqs(r));
  }
  return modal;
}

double mof(const ModalData& modal, Index r, double omega) {
  require(r >= 0 && r + 1 < modal.size(), ErrorCode::UndefinedMode,
          "MOF needs a successor mode; got mode " + std::to_string(r) + " of " +
              std::to_string(modal.size()));
  const double gap = modal.natural_freqs(r + 1) - modal.natural_freqs(r);
  const double numerator = 2.0 * modal.damping_ratios(r) * omega;
  if (gap <= 0.0) return numerator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return numerator / gap;
}

}  // namespace sensorplace
