#include "sensorplace/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sensorplace/errors.hpp"

namespace sensorplace {

namespace {

// Exact Hermitian symmetry; products are only Hermitian up to rounding.
ComplexMatrix hermitized(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

GramMatrix gram(const ComplexMatrix& h_bar, double omega, IndexList sensor_rows) {
  require(h_bar.size() > 0, ErrorCode::InvalidParameter, "Gram of an empty matrix");
  GramMatrix g;
  g.omega = omega;
  g.sensor_rows = std::move(sensor_rows);
  g.values = h_bar.adjoint() * h_bar;
  g.values = hermitized(g.values);
  return g;
}

GramMatrix gram(const NormalizedFrf& h_bar) { return gram(h_bar.h_bar, h_bar.omega, h_bar.rows); }

namespace {

void require_full_measurement(const ModalData& modal, const NormalizedFrf& full) {
  const Index n = modal.size();
  const bool full_rows = static_cast<Index>(full.rows.size()) == n &&
                         std::is_permutation(full.rows.begin(), full.rows.end(),
                                             iota_indices(n).begin());
  require(full_rows, ErrorCode::InvalidParameter,
          "modal Gram decomposition needs full measurement (all N sensor rows)");
  require(full.cols == iota_indices(n) && full.col_norms.size() == n,
          ErrorCode::DimensionMismatch,
          "modal Gram decomposition needs all N force columns in node order");
}

void accumulate_mode(const ModalData& modal, Index p, const NormalizedFrf& full,
                     ComplexMatrix& out) {
  require(p >= 0 && p < modal.size(), ErrorCode::InvalidParameter,
          "mode index " + std::to_string(p) + " out of range");
  const double omega = full.omega;
  const double wp = modal.natural_freqs(p);
  const double re = wp * wp - omega * omega;
  const double im = 2.0 * modal.damping_ratios(p) * wp * omega;
  const auto phi = modal.mode_shapes.col(p);
  // sum_r phi_rp^2 over all sensors; equals 1 / M_pp for a lumped uniform mass.
  const double sensor_energy = phi.squaredNorm();
  const double w4 = omega * omega * omega * omega;
  const double coeff = w4 * sensor_energy / (re * re + im * im);
  const RealVector scaled = phi.cwiseQuotient(full.col_norms);
  for (Index j = 0; j < out.cols(); ++j)
    for (Index i = 0; i < out.rows(); ++i) out(i, j) += coeff * scaled(i) * scaled(j);
}

}  // namespace

ComplexMatrix gram_mode_contribution(const ModalData& modal, Index p, const NormalizedFrf& full) {
  require_full_measurement(modal, full);
  ComplexMatrix out = ComplexMatrix::Zero(modal.size(), modal.size());
  accumulate_mode(modal, p, full, out);
  return hermitized(out);
}

ComplexMatrix gram_modal_approx(const ModalData& modal, const IndexList& modes,
                                const NormalizedFrf& full) {
  require(!modes.empty(), ErrorCode::InvalidParameter, "mode subset is empty");
  require_full_measurement(modal, full);
  ComplexMatrix out = ComplexMatrix::Zero(modal.size(), modal.size());
  for (Index p : modes) accumulate_mode(modal, p, full, out);
  return hermitized(out);
}

GramNorms gram_norms(const ComplexMatrix& g) {
  GramNorms out;
  const double total = g.squaredNorm();
  const double diag = g.diagonal().squaredNorm();
  out.frobenius = std::sqrt(total);
  out.offdiag_frobenius = std::sqrt(std::max(total - diag, 0.0));
  for (Index j = 0; j < g.cols(); ++j)
    for (Index i = 0; i < g.rows(); ++i)
      if (i != j) out.max_offdiag = std::max(out.max_offdiag, std::abs(g(i, j)));
  return out;
}

IndexList nearby_modes(const ModalData& modal, double omega, double window, Index min_modes) {
  const Index n = modal.size();
  require(n > 0, ErrorCode::InvalidParameter, "no modes");
  IndexList order = iota_indices(n);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(modal.natural_freqs(a) - omega) < std::abs(modal.natural_freqs(b) - omega);
  });
  IndexList out;
  for (Index r : order) {
    const bool inside = std::abs(modal.natural_freqs(r) - omega) <= window * omega;
    if (inside || static_cast<Index>(out.size()) < min_modes) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double relative_frobenius_error(const ComplexMatrix& exact, const ComplexMatrix& approx) {
  require(exact.rows() == approx.rows() && exact.cols() == approx.cols(),
          ErrorCode::DimensionMismatch, "matrices differ in shape");
  return (exact - approx).norm() / exact.norm();
}

}  // namespace sensorplace
