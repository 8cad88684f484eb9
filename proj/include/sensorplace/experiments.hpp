#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <vector>

#include "sensorplace/frf.hpp"
#include "sensorplace/lasso.hpp"
#include "sensorplace/linalg.hpp"
#include "sensorplace/modal_model.hpp"
#include "sensorplace/placement.hpp"

namespace sensorplace {

/// Pass as snr_db to disable noise.
inline constexpr double kNoiseFree = std::numeric_limits<double>::infinity();

/// Derives an independent seed for task `index` of `stream` from `root`, so
/// parallel tasks draw the same numbers regardless of scheduling.
std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index);

/// Adds circular complex Gaussian noise scaled so that
/// 20 log10(||y|| / ||n||) equals snr_db exactly.
ComplexVector add_noise(const ComplexVector& y, double snr_db, std::uint64_t seed);

/// Mean |x_ij| over the off-diagonal entries of a square map.
double od_mae(const ComplexMatrix& map);

struct ReconstructionOptions {
  double snr_db = 20.0;
  double mu_fraction = 0.1;
  PenaltyWeighting weighting = PenaltyWeighting::Unit;
  SolverOptions solver;
  std::uint64_t seed = 0;
  /// When set, invert with a modal-truncated FRF over these modes instead of
  /// the exact matrix that generated the data.
  std::optional<IndexList> reconstruction_modes;
};

/// Row i holds the de-normalized estimate for a unit force at node i.
struct ReconstructionMap {
  ComplexMatrix values;
  double omega = 0.0;
  IndexList sensor_set;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  int nonconverged = 0;
  int max_iterations = 0;
  double max_kkt_residual = 0.0;
};

/// Simulates y = H e_i (+ noise) for every node i with `measurement`, then
/// solves the normalized LASSO with `model`. Both matrices hold the sensor
/// rows and all N force columns.
ReconstructionMap reconstruction_map(const FrfMatrix& measurement, const FrfMatrix& model,
                                     const ReconstructionOptions& options,
                                     Execution execution = Execution::Parallel);

/// Builds the measurement FRF with frf_direct over `sensors` and runs the map.
ReconstructionMap reconstruction_map(const MechanicalSystem& system, const IndexList& sensors,
                                     double omega, const ReconstructionOptions& options,
                                     Execution execution = Execution::Parallel);

struct SweepOptions {
  Index budget = 10;
  double snr_db = 20.0;
  double mu_fraction = 0.1;
  PenaltyWeighting weighting = PenaltyWeighting::Unit;
  SolverOptions solver;
  std::uint64_t seed = 0;
  /// OD-MAE is the median over this many independent noise draws.
  int repeats = 1;
  /// Skip the LASSO maps and report Gram diagnostics only.
  bool reconstruct = true;
  AntinodalOptions antinodal;
};

struct ConfigurationSeries {
  /// ||G||_F of the re-normalized sensing matrix used for reconstruction.
  std::vector<double> gram_frobenius;
  std::vector<double> gram_offdiag;
  /// Off-diagonal energy of the rows taken from the full normalized FRF.
  std::vector<double> selection_objective;
  /// Median OD-MAE; NaN when reconstruction is disabled.
  std::vector<double> od_mae;
  std::vector<IndexList> sensors;
};

struct SweepReport {
  std::vector<double> frequencies_hz;
  std::vector<Index> dominant_mode;
  std::vector<Index> sensor_count;
  ConfigurationSeries full;
  ConfigurationSeries optimal;
  ConfigurationSeries antinodal;
  std::vector<SensorSet> greedy;
  int nonconverged = 0;
};

/// Index of the natural frequency closest to omega.
Index dominant_mode(const ModalData& modal, double omega);

/// Per frequency: greedy placement, anti-nodal baseline for the dominant mode
/// (same sensor count, min(budget, anti-nodal capacity)), full measurement,
/// and their Gram diagnostics and OD-MAE.
SweepReport frequency_sweep(const MechanicalSystem& system, const std::vector<double>& freq_hz,
                            const SweepOptions& options,
                            Execution execution = Execution::Parallel);

/// Measured response at a set of sensor nodes.
struct MeasurementVector {
  double omega = 0.0;
  IndexList sensors;
  ComplexVector values;
};

/// normalize -> solve -> de-normalize on externally supplied data. When
/// `sensor_subset` is set, only those sensor nodes are used; the rows of `h`
/// are matched to `y` by node index.
LassoSolution reconstruct(const FrfMatrix& h, const MeasurementVector& y,
                          const std::optional<IndexList>& sensor_subset,
                          double mu_fraction, PenaltyWeighting weighting,
                          const SolverOptions& solver = {});

LassoSolution reconstruct_from_file(const std::filesystem::path& h_file,
                                    const std::filesystem::path& y_file,
                                    const std::optional<IndexList>& sensor_subset,
                                    double mu_fraction, PenaltyWeighting weighting,
                                    const SolverOptions& solver = {});

}  // namespace sensorplace
