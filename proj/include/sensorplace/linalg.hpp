#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sensorplace {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Ordered list of node (or mode) indices, 0-based.
using IndexList = std::vector<Index>;

/// Selects the OpenMP kernel or its single-threaded reference. Both produce
/// identical results.
enum class Execution { Parallel, Serial };

/// 0, 1, ..., n-1
IndexList iota_indices(Index n);

}  // namespace sensorplace
