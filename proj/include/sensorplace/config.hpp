#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sensorplace/experiments.hpp"
#include "sensorplace/lasso.hpp"
#include "sensorplace/modal_model.hpp"
#include "sensorplace/placement.hpp"

namespace sensorplace {

/// A system stored on disk in the JSON layout of io::to_json(MechanicalSystem).
struct SystemFile {
  std::filesystem::path path;
};

using SystemSpec = std::variant<ChainParams, IrregularParams, SystemFile>;

/// Target frequency, either absolute or relative to a natural frequency:
/// omega = factor * omega_{mode_number} (mode_number is 1-based).
struct TargetSpec {
  std::optional<double> frequency_hz;
  Index mode_number = 5;
  double factor = 0.95;
};

/// Everything an experiment run depends on. Loaded from a JSON file:
///
///   {
///     "system": {"type": "chain", "n": 50, "mass": 2, "stiffness": 2e6,
///                "alpha": 1e-4, "beta": 1e-3},
///     "target": {"mode_number": 5, "factor": 0.95},
///     "frequency_grid": {"start_hz": 2, "stop_hz": 100, "step_hz": 0.5},
///     "budget": 20, "snr_db": 20, "mu_fraction": 0.1, "seed": 1,
///     "repeats": 1, "weighting": "unit",
///     "solver": {"tol": 1e-8, "max_iter": 50000},
///     "antinodal": {"min_spacing": null, "local_extrema_only": true}
///   }
///
/// Every key is optional; missing keys take the defaults below.
struct ExperimentConfig {
  SystemSpec system = ChainParams{};
  TargetSpec target;
  std::vector<double> grid_hz;
  Index budget = 20;
  double snr_db = 20.0;
  double mu_fraction = 0.1;
  PenaltyWeighting weighting = PenaltyWeighting::Unit;
  std::uint64_t seed = 0;
  int repeats = 1;
  SolverOptions solver;
  AntinodalOptions antinodal;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

MechanicalSystem build_system(const SystemSpec& spec);
double resolve_omega(const TargetSpec& target, const ModalData& modal);

/// Evenly spaced grid start, start+step, ... <= stop (+ half a step).
std::vector<double> linear_grid(double start, double stop, double step);

PenaltyWeighting weighting_from_string(const std::string& name);
const char* to_string(PenaltyWeighting weighting);

}  // namespace sensorplace
