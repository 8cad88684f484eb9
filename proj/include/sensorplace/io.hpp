#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sensorplace/experiments.hpp"
#include "sensorplace/frf.hpp"
#include "sensorplace/gram.hpp"
#include "sensorplace/lasso.hpp"
#include "sensorplace/modal_model.hpp"
#include "sensorplace/placement.hpp"

// File formats
// ------------
// JSON matrices are arrays of rows (row-major). Complex matrices are stored
// as {"re": [[...]], "im": [[...]]}. Doubles are written with round-trip
// precision, so a write/read cycle is bit-exact.
//
// FRF CSV:
//   # sensorplace-frf v1 omega=<rad/s>
//   sensor,re_<c0>,im_<c0>,re_<c1>,im_<c1>,...
//   <node>,<re>,<im>,...                 one line per sensor
//
// Measurement CSV:
//   # sensorplace-vector v1 omega=<rad/s>
//   sensor,re,im
//   <node>,<re>,<im>
//
// Magnitude grid CSV (Gram matrices, reconstruction maps):
//   row,<c0>,<c1>,...
//   <r>,|m_r0|,|m_r1|,...

namespace sensorplace::io {

using nlohmann::json;

json to_json(const RealMatrix& m);
json to_json(const ComplexMatrix& m);
json to_json(const ComplexVector& v);
RealMatrix real_matrix_from_json(const json& j);
ComplexMatrix complex_matrix_from_json(const json& j);
ComplexVector complex_vector_from_json(const json& j);

json to_json(const MechanicalSystem& system);
MechanicalSystem system_from_json(const json& j);

json to_json(const ModalData& modal);
ModalData modal_from_json(const json& j);

json to_json(const FrfMatrix& frf);
FrfMatrix frf_from_json(const json& j);

json to_json(const MeasurementVector& y);
MeasurementVector measurement_from_json(const json& j);

json to_json(const SensorSet& set);
json to_json(const GramNorms& norms);
json to_json(const LassoSolution& solution);
json to_json(const ReconstructionMap& map);
json to_json(const SweepReport& report);

void write_frf_csv(std::ostream& out, const FrfMatrix& frf);
FrfMatrix read_frf_csv(std::istream& in, const std::string& source = "<frf>");

void write_measurement_csv(std::ostream& out, const MeasurementVector& y);
MeasurementVector read_measurement_csv(std::istream& in, const std::string& source = "<vector>");

void write_magnitude_grid_csv(std::ostream& out, const ComplexMatrix& m);

/// freq_hz,dominant_mode,sensor_count, then per configuration
/// (full, optimal, antinodal): gram_fro, gram_offdiag, objective, od_mae.
void write_sweep_csv(std::ostream& out, const SweepReport& report);

/// One row per frequency, one 0/1 column per node (greedy selection).
void write_activation_csv(std::ostream& out, const SweepReport& report, Index n_dof);

/// Dispatches on extension: .csv uses the CSV readers, anything else JSON.
FrfMatrix load_frf(const std::filesystem::path& path);
MeasurementVector load_measurement(const std::filesystem::path& path);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace sensorplace::io
