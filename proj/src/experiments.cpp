#include "sensorplace/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <string>

#include "sensorplace/errors.hpp"
#include "sensorplace/gram.hpp"
#include "sensorplace/io.hpp"

namespace sensorplace {

std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(root), hi(root), lo(stream), hi(stream), lo(index), hi(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

ComplexVector add_noise(const ComplexVector& y, double snr_db, std::uint64_t seed) {
  require(!std::isnan(snr_db) && snr_db != -std::numeric_limits<double>::infinity(),
          ErrorCode::InvalidParameter, "SNR must be a number or +inf");
  if (std::isinf(snr_db)) return y;
  const double signal = y.norm();
  require(signal > 0.0, ErrorCode::InvalidParameter, "cannot scale noise to a zero signal");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector noise(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    noise(i) = Complex(re, im);
  }
  const double target = signal * std::pow(10.0, -snr_db / 20.0);
  return y + noise * (target / noise.norm());
}

double od_mae(const ComplexMatrix& map) {
  require(map.rows() == map.cols() && map.rows() >= 2, ErrorCode::DimensionMismatch,
          "OD-MAE needs a square map of size >= 2");
  const Index n = map.rows();
  const double total = map.cwiseAbs().sum() - map.diagonal().cwiseAbs().sum();
  return total / static_cast<double>(n * (n - 1));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void rethrow_for_node(const Error& e, Index node) {
  throw Error(e.code(), "force node " + std::to_string(node) + ": " + e.what());
}

}  // namespace

ReconstructionMap reconstruction_map(const FrfMatrix& measurement, const FrfMatrix& model,
                                     const ReconstructionOptions& options, Execution execution) {
  const Index n = static_cast<Index>(model.cols.size());
  require(measurement.rows == model.rows && measurement.cols == model.cols,
          ErrorCode::DimensionMismatch, "measurement and model FRFs cover different nodes");
  require(model.cols == iota_indices(n), ErrorCode::InvalidParameter,
          "reconstruction needs every node as a force column, in order");
  model.validate();
  measurement.validate();

  // Normalize the model once; each force case only rescales y.
  const NormalizedFrf norm = normalize_columns(model);
  LassoProblem base;
  base.h_bar = norm.h_bar;
  base.col_norms = norm.col_norms;
  base.weights = options.weighting == PenaltyWeighting::Unit
                     ? RealVector(RealVector::Ones(n))
                     : RealVector(norm.col_norms.cwiseInverse());

  ReconstructionMap out;
  out.values = ComplexMatrix::Zero(n, n);
  out.omega = model.omega;
  out.sensor_set = model.rows;
  out.snr_db = options.snr_db;
  out.seed = options.seed;

  std::vector<LassoSolution> solutions(static_cast<std::size_t>(n));
  std::exception_ptr failure;

  const auto run = [&](Index i) {
    try {
      const ComplexVector y =
          add_noise(measurement.values.col(i), options.snr_db,
                    split_seed(options.seed, 0, static_cast<std::uint64_t>(i)));
      LassoProblem p = base;
      p.y_norm = y.norm();
      require(p.y_norm > 0.0, ErrorCode::InvalidParameter, "measurement vector is zero");
      p.y_bar = y / p.y_norm;
      p.mu_bar = default_mu(p.h_bar, p.y_bar, options.mu_fraction);
      solutions[static_cast<std::size_t>(i)] = solve(p, options.solver);
    } catch (const Error& e) {
      try {
        rethrow_for_node(e, i);
      } catch (...) {
#pragma omp critical(sensorplace_map_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Index i = 0; i < n; ++i) run(i);
  } else {
    for (Index i = 0; i < n; ++i) run(i);
  }
  if (failure) std::rethrow_exception(failure);

  for (Index i = 0; i < n; ++i) {
    const LassoSolution& s = solutions[static_cast<std::size_t>(i)];
    out.values.row(i) = s.x_hat.transpose();
    if (!s.converged) ++out.nonconverged;
    out.max_iterations = std::max(out.max_iterations, s.iterations);
    out.max_kkt_residual = std::max(out.max_kkt_residual, s.kkt_residual);
  }
  return out;
}

ReconstructionMap reconstruction_map(const MechanicalSystem& system, const IndexList& sensors,
                                     double omega, const ReconstructionOptions& options,
                                     Execution execution) {
  const IndexList all = iota_indices(system.dof());
  const FrfMatrix measured = frf_direct(system, sensors, all, omega);
  if (!options.reconstruction_modes) return reconstruction_map(measured, measured, options, execution);
  const FrfMatrix model =
      frf_modal(solve_modes(system), sensors, all, omega, options.reconstruction_modes);
  return reconstruction_map(measured, model, options, execution);
}

Index dominant_mode(const ModalData& modal, double omega) {
  require(modal.size() > 0, ErrorCode::InvalidParameter, "no modes");
  Index best = 0;
  for (Index r = 1; r < modal.size(); ++r)
    if (std::abs(modal.natural_freqs(r) - omega) < std::abs(modal.natural_freqs(best) - omega))
      best = r;
  return best;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct ConfigurationPoint {
  double gram_frobenius = 0.0;
  double gram_offdiag = 0.0;
  double selection_objective = 0.0;
  double od_mae = std::numeric_limits<double>::quiet_NaN();
  IndexList sensors;
  int nonconverged = 0;
};

struct SweepPoint {
  Index dominant = 0;
  Index sensor_count = 0;
  ConfigurationPoint full;
  ConfigurationPoint optimal;
  ConfigurationPoint antinodal;
  SensorSet greedy;
};

ConfigurationPoint evaluate(const FrfMatrix& h_full, const NormalizedFrf& full_norm,
                            const IndexList& sensors, const SweepOptions& options,
                            std::uint64_t stream) {
  ConfigurationPoint c;
  c.sensors = sensors;
  const FrfMatrix sub = select_rows(h_full, sensors);
  const GramNorms norms = gram_norms(gram(normalize_columns(sub)).values);
  c.gram_frobenius = norms.frobenius;
  c.gram_offdiag = norms.offdiag_frobenius;
  c.selection_objective = selection_objective(full_norm, sensors);
  if (!options.reconstruct) return c;

  std::vector<double> draws;
  for (int r = 0; r < options.repeats; ++r) {
    ReconstructionOptions ro;
    ro.snr_db = options.snr_db;
    ro.mu_fraction = options.mu_fraction;
    ro.weighting = options.weighting;
    ro.solver = options.solver;
    ro.seed = split_seed(options.seed, stream, static_cast<std::uint64_t>(r));
    const ReconstructionMap map = reconstruction_map(sub, sub, ro, Execution::Serial);
    c.nonconverged += map.nonconverged;
    draws.push_back(od_mae(map.values));
  }
  c.od_mae = median(std::move(draws));
  return c;
}

SweepPoint sweep_point(const MechanicalSystem& system, const ModalData& modal, double freq_hz,
                       std::size_t index, const SweepOptions& options, Execution execution) {
  const double omega = kTwoPi * freq_hz;
  const IndexList all = iota_indices(system.dof());
  const FrfMatrix h_full = frf_direct(system, all, all, omega);
  const NormalizedFrf full_norm = normalize_columns(h_full);

  SweepPoint pt;
  pt.greedy = execution == Execution::Parallel ? greedy_select(full_norm, options.budget)
                                               : greedy_select_serial(full_norm, options.budget);
  pt.dominant = dominant_mode(modal, omega);
  pt.sensor_count =
      std::min(options.budget, antinodal_capacity(modal, pt.dominant, options.antinodal));

  const IndexList greedy_prefix(pt.greedy.selected.begin(),
                                pt.greedy.selected.begin() + pt.sensor_count);
  const SensorSet anti =
      antinodal_select(modal, pt.dominant, pt.sensor_count, options.antinodal);

  const std::uint64_t base = 3 * static_cast<std::uint64_t>(index);
  pt.full = evaluate(h_full, full_norm, all, options, base + 1);
  pt.optimal = evaluate(h_full, full_norm, greedy_prefix, options, base + 2);
  pt.antinodal = evaluate(h_full, full_norm, anti.selected, options, base + 3);
  return pt;
}

void append(ConfigurationSeries& series, const ConfigurationPoint& c) {
  series.gram_frobenius.push_back(c.gram_frobenius);
  series.gram_offdiag.push_back(c.gram_offdiag);
  series.selection_objective.push_back(c.selection_objective);
  series.od_mae.push_back(c.od_mae);
  series.sensors.push_back(c.sensors);
}

}  // namespace

SweepReport frequency_sweep(const MechanicalSystem& system, const std::vector<double>& freq_hz,
                            const SweepOptions& options, Execution execution) {
  require(!freq_hz.empty(), ErrorCode::InvalidParameter, "frequency grid is empty");
  for (double f : freq_hz)
    require(std::isfinite(f) && f > 0.0, ErrorCode::InvalidParameter,
            "frequencies must be positive and finite");
  require(options.repeats >= 1, ErrorCode::InvalidParameter, "repeats must be >= 1");
  system.validate();
  const ModalData modal = solve_modes(system);

  std::vector<SweepPoint> points(freq_hz.size());
  std::exception_ptr failure;
  const auto run = [&](std::size_t k) {
    try {
      points[k] = sweep_point(system, modal, freq_hz[k], k, options, execution);
    } catch (...) {
#pragma omp critical(sensorplace_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  };

  const auto count = static_cast<std::ptrdiff_t>(freq_hz.size());
  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) run(static_cast<std::size_t>(k));
  } else {
    for (std::ptrdiff_t k = 0; k < count; ++k) run(static_cast<std::size_t>(k));
  }
  if (failure) std::rethrow_exception(failure);

  SweepReport report;
  report.frequencies_hz = freq_hz;
  for (const SweepPoint& pt : points) {
    report.dominant_mode.push_back(pt.dominant);
    report.sensor_count.push_back(pt.sensor_count);
    append(report.full, pt.full);
    append(report.optimal, pt.optimal);
    append(report.antinodal, pt.antinodal);
    report.greedy.push_back(pt.greedy);
    report.nonconverged += pt.full.nonconverged + pt.optimal.nonconverged + pt.antinodal.nonconverged;
  }
  return report;
}

LassoSolution reconstruct(const FrfMatrix& h, const MeasurementVector& y,
                          const std::optional<IndexList>& sensor_subset, double mu_fraction,
                          PenaltyWeighting weighting, const SolverOptions& solver) {
  h.validate();
  require(y.values.size() == static_cast<Index>(y.sensors.size()), ErrorCode::DimensionMismatch,
          "measurement has " + std::to_string(y.values.size()) + " values for " +
              std::to_string(y.sensors.size()) + " sensors");
  const double scale = std::max(std::abs(h.omega), std::abs(y.omega));
  require(std::abs(h.omega - y.omega) <= 1e-9 * scale, ErrorCode::InvalidParameter,
          "FRF and measurement were taken at different frequencies");

  const IndexList nodes = sensor_subset.value_or(y.sensors);
  require(!nodes.empty(), ErrorCode::InvalidParameter, "no sensors selected");
  ComplexVector y_sub(static_cast<Index>(nodes.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto it = std::find(y.sensors.begin(), y.sensors.end(), nodes[k]);
    require(it != y.sensors.end(), ErrorCode::InvalidParameter,
            "sensor node " + std::to_string(nodes[k]) + " has no measured value");
    y_sub(static_cast<Index>(k)) = y.values(it - y.sensors.begin());
  }
  const FrfMatrix h_sub = select_rows(h, nodes);
  return solve(make_problem(h_sub.values, y_sub, mu_fraction, weighting), solver);
}

LassoSolution reconstruct_from_file(const std::filesystem::path& h_file,
                                    const std::filesystem::path& y_file,
                                    const std::optional<IndexList>& sensor_subset,
                                    double mu_fraction, PenaltyWeighting weighting,
                                    const SolverOptions& solver) {
  return reconstruct(io::load_frf(h_file), io::load_measurement(y_file), sensor_subset,
                     mu_fraction, weighting, solver);
}

}  // namespace sensorplace
