#include "sensorplace/frf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "sensorplace/errors.hpp"

namespace sensorplace {

namespace {

void check_indices(const IndexList& idx, Index n, const char* what) {
  require(!idx.empty(), ErrorCode::InvalidParameter, std::string(what) + " list is empty");
  std::set<Index> seen;
  for (Index i : idx) {
    require(i >= 0 && (n < 0 || i < n), ErrorCode::InvalidParameter,
            std::string(what) + " index " + std::to_string(i) + " out of range");
    require(seen.insert(i).second, ErrorCode::InvalidParameter,
            std::string(what) + " index " + std::to_string(i) + " repeated");
  }
}

void check_omega(double omega) {
  require(std::isfinite(omega) && omega > 0.0, ErrorCode::InvalidParameter,
          "omega must be positive and finite");
}

}  // namespace

void FrfMatrix::validate(Index n_dof) const {
  check_indices(rows, n_dof, "row");
  check_indices(cols, n_dof, "column");
  require(values.rows() == static_cast<Index>(rows.size()) &&
              values.cols() == static_cast<Index>(cols.size()),
          ErrorCode::DimensionMismatch, "FRF values do not match the row/column lists");
}

FrfMatrix frf_modal(const ModalData& modal, const IndexList& rows, const IndexList& cols,
                    double omega, const std::optional<IndexList>& mode_subset) {
  check_omega(omega);
  const Index n = modal.size();
  check_indices(rows, n, "row");
  check_indices(cols, n, "column");
  IndexList modes = mode_subset.value_or(iota_indices(n));
  require(!modes.empty(), ErrorCode::InvalidParameter, "mode subset is empty");
  check_indices(modes, n, "mode");

  FrfMatrix out;
  out.omega = omega;
  out.rows = rows;
  out.cols = cols;
  out.values = ComplexMatrix::Zero(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));

  const double w2 = omega * omega;
  for (Index r : modes) {
    const double wr = modal.natural_freqs(r);
    const Complex denom(wr * wr - w2, 2.0 * modal.damping_ratios(r) * wr * omega);
    const Complex factor = -w2 / denom;
    const auto phi = modal.mode_shapes.col(r);
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const Complex fb = factor * phi(cols[b]);
      for (std::size_t a = 0; a < rows.size(); ++a)
        out.values(static_cast<Index>(a), static_cast<Index>(b)) += phi(rows[a]) * fb;
    }
  }
  return out;
}

FrfMatrix frf_direct(const MechanicalSystem& system, const IndexList& rows,
                     const IndexList& cols, double omega) {
  check_omega(omega);
  const Index n = system.dof();
  check_indices(rows, n, "row");
  check_indices(cols, n, "column");

  const ComplexMatrix dynamic_stiffness =
      (system.stiffness - omega * omega * system.mass).cast<Complex>() +
      Complex(0.0, omega) * system.damping.cast<Complex>();
  Eigen::PartialPivLU<ComplexMatrix> lu(dynamic_stiffness);
  const double rcond = lu.rcond();
  require(std::isfinite(rcond) && rcond > std::numeric_limits<double>::epsilon(),
          ErrorCode::SingularSystem,
          "dynamic stiffness is singular at omega = " + std::to_string(omega));

  ComplexMatrix unit = ComplexMatrix::Zero(n, static_cast<Index>(cols.size()));
  for (std::size_t b = 0; b < cols.size(); ++b) unit(cols[b], static_cast<Index>(b)) = 1.0;
  const ComplexMatrix receptance = lu.solve(unit);

  FrfMatrix out;
  out.omega = omega;
  out.rows = rows;
  out.cols = cols;
  out.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    out.values.row(static_cast<Index>(a)) = -omega * omega * receptance.row(rows[a]);
  return out;
}

NormalizedFrf normalize_columns(const FrfMatrix& frf) {
  require(frf.values.size() > 0, ErrorCode::InvalidParameter, "FRF matrix is empty");
  require(frf.values.allFinite(), ErrorCode::InvalidParameter, "FRF matrix has non-finite entries");

  NormalizedFrf out;
  out.omega = frf.omega;
  out.rows = frf.rows;
  out.cols = frf.cols;
  out.col_norms = frf.values.colwise().norm().transpose();

  const double largest = out.col_norms.maxCoeff();
  for (Index c = 0; c < out.col_norms.size(); ++c) {
    if (!(out.col_norms(c) > 1.0e-300 * largest) || largest == 0.0) {
      const Index node = c < static_cast<Index>(frf.cols.size()) ? frf.cols[c] : c;
      fail(ErrorCode::DegenerateColumn,
           "FRF column for force node " + std::to_string(node) +
               " is zero over the selected sensors");
    }
  }
  out.h_bar = frf.values * out.col_norms.cwiseInverse().asDiagonal();
  return out;
}

FrfMatrix select_rows(const FrfMatrix& frf, const IndexList& nodes) {
  FrfMatrix out;
  out.omega = frf.omega;
  out.cols = frf.cols;
  out.rows = nodes;
  out.values.resize(static_cast<Index>(nodes.size()), frf.values.cols());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto it = std::find(frf.rows.begin(), frf.rows.end(), nodes[k]);
    require(it != frf.rows.end(), ErrorCode::InvalidParameter,
            "sensor node " + std::to_string(nodes[k]) + " is not a row of the FRF matrix");
    out.values.row(static_cast<Index>(k)) = frf.values.row(it - frf.rows.begin());
  }
  return out;
}

}  // namespace sensorplace
