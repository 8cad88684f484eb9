// sensorplace: sensor placement and sparse force reconstruction from the
// command line. Every subcommand reads an optional JSON config (see
// include/sensorplace/config.hpp) and writes JSON/CSV into --out.

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sensorplace/config.hpp"
#include "sensorplace/errors.hpp"
#include "sensorplace/experiments.hpp"
#include "sensorplace/frf.hpp"
#include "sensorplace/gram.hpp"
#include "sensorplace/io.hpp"
#include "sensorplace/placement.hpp"

namespace fs = std::filesystem;
namespace sp = sensorplace;
using nlohmann::json;

namespace {

constexpr int kExitNonconverged = 3;

struct Common {
  std::string config;
  std::string out = "out";
  bool allow_nonconverged = false;
};

sp::ExperimentConfig load(const Common& c) {
  return c.config.empty() ? sp::ExperimentConfig{} : sp::load_config(c.config);
}

std::string csv_text(const std::function<void(std::ostream&)>& write) {
  std::ostringstream s;
  write(s);
  return s.str();
}

int finish(const Common& c, int nonconverged) {
  if (nonconverged == 0) return 0;
  std::cerr << "warning: " << nonconverged << " solve(s) did not converge\n";
  return c.allow_nonconverged ? 0 : kExitNonconverged;
}

sp::IndexList parse_nodes(const std::string& text) {
  sp::IndexList out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    sp::require(used == item.size() && v >= 0, sp::ErrorCode::InvalidParameter,
                "bad node index '" + item + "' in --sensors");
    out.push_back(static_cast<sp::Index>(v));
  }
  sp::require(!out.empty(), sp::ErrorCode::InvalidParameter, "--sensors is empty");
  return out;
}

// ---------------------------------------------------------------- simulate

int simulate(const Common& c, const sp::MechanicalSystem& system, const sp::ExperimentConfig& cfg) {
  const fs::path out = c.out;
  const sp::ModalData modal = sp::solve_modes(system);
  const double omega = sp::resolve_omega(cfg.target, modal);
  const sp::IndexList all = sp::iota_indices(system.dof());
  const sp::FrfMatrix h = sp::frf_direct(system, all, all, omega);
  const sp::GramMatrix g = sp::gram(sp::normalize_columns(h));

  json summary = {{"dof", system.dof()},
                  {"omega", omega},
                  {"natural_freqs_hz", json::array()},
                  {"damping_ratios", json::array()},
                  {"gram", sp::io::to_json(sp::gram_norms(g))}};
  for (sp::Index r = 0; r < modal.size(); ++r) {
    summary["natural_freqs_hz"].push_back(modal.natural_freqs(r) / (2.0 * std::numbers::pi));
    summary["damping_ratios"].push_back(modal.damping_ratios(r));
  }

  sp::io::write_json_file(out / "system.json", sp::io::to_json(system));
  sp::io::write_json_file(out / "modal.json", sp::io::to_json(modal));
  sp::io::write_json_file(out / "summary.json", summary);
  sp::io::write_text_file(out / "frf.csv", csv_text([&](std::ostream& s) { sp::io::write_frf_csv(s, h); }));
  sp::io::write_text_file(out / "gram.csv",
                          csv_text([&](std::ostream& s) { sp::io::write_magnitude_grid_csv(s, g.values); }));
  return 0;
}

// ---------------------------------------------------------------- place

int place(const Common& c, const std::optional<sp::Index>& budget_flag) {
  const sp::ExperimentConfig cfg = load(c);
  const sp::MechanicalSystem system = sp::build_system(cfg.system);
  const sp::ModalData modal = sp::solve_modes(system);
  const double omega = sp::resolve_omega(cfg.target, modal);
  const sp::Index budget = budget_flag.value_or(cfg.budget);
  const sp::IndexList all = sp::iota_indices(system.dof());

  const sp::NormalizedFrf full = sp::normalize_columns(sp::frf_direct(system, all, all, omega));
  const sp::SensorSet set = sp::greedy_select(full, budget);
  const sp::ComplexMatrix sub_gram =
      sp::gram(sp::normalize_columns(sp::select_rows(sp::frf_direct(system, all, all, omega), set.selected)))
          .values;

  const fs::path out = c.out;
  sp::io::write_json_file(out / "place.json", sp::io::to_json(set));
  sp::io::write_text_file(out / "gram_selected.csv", csv_text([&](std::ostream& s) {
                            sp::io::write_magnitude_grid_csv(s, sub_gram);
                          }));

  if (!cfg.grid_hz.empty()) {
    sp::SweepOptions opts;
    opts.budget = budget;
    opts.reconstruct = false;
    opts.antinodal = cfg.antinodal;
    const sp::SweepReport report = sp::frequency_sweep(system, cfg.grid_hz, opts);
    sp::io::write_text_file(out / "activation.csv", csv_text([&](std::ostream& s) {
                              sp::io::write_activation_csv(s, report, system.dof());
                            }));
  }
  return 0;
}

// ---------------------------------------------------------------- reconstruct

json solution_report(const sp::LassoSolution& sol, const sp::IndexList& sensors, double mu_fraction) {
  json mag = json::array();
  json phase = json::array();
  for (sp::Index i = 0; i < sol.x_hat.size(); ++i) {
    mag.push_back(std::abs(sol.x_hat(i)));
    phase.push_back(std::arg(sol.x_hat(i)));
  }
  json j = sp::io::to_json(sol);
  j["x_hat_magnitude"] = mag;
  j["x_hat_phase_rad"] = phase;
  j["sensors"] = sensors;
  j["mu_fraction"] = mu_fraction;
  return j;
}

struct ReconstructArgs {
  std::string h_file;
  std::string y_file;
  std::string sensors = "greedy";
  std::optional<sp::Index> force;
  bool map = false;
};

sp::IndexList resolve_sensors(const std::string& rule, const sp::MechanicalSystem& system,
                              const sp::ModalData& modal, double omega,
                              const sp::ExperimentConfig& cfg) {
  const sp::IndexList all = sp::iota_indices(system.dof());
  if (rule == "full") return all;
  if (rule == "greedy")
    return sp::greedy_select(sp::normalize_columns(sp::frf_direct(system, all, all, omega)), cfg.budget)
        .selected;
  if (rule == "antinodal") {
    const sp::Index p = sp::dominant_mode(modal, omega);
    const sp::Index k = std::min(cfg.budget, sp::antinodal_capacity(modal, p, cfg.antinodal));
    return sp::antinodal_select(modal, p, k, cfg.antinodal).selected;
  }
  return parse_nodes(rule);
}

int reconstruct(const Common& c, const ReconstructArgs& a) {
  const sp::ExperimentConfig cfg = load(c);
  const fs::path out = c.out;

  if (!a.h_file.empty() && !a.y_file.empty()) {
    const sp::FrfMatrix h = sp::io::load_frf(a.h_file);
    const sp::MeasurementVector y = sp::io::load_measurement(a.y_file);
    const sp::LassoSolution sol =
        sp::reconstruct(h, y, std::nullopt, cfg.mu_fraction, cfg.weighting, cfg.solver);
    sp::io::write_json_file(out / "reconstruct.json", solution_report(sol, y.sensors, cfg.mu_fraction));
    return finish(c, sol.converged ? 0 : 1);
  }
  sp::require(a.h_file.empty() == a.y_file.empty(), sp::ErrorCode::InvalidParameter,
              "--frf and --measurement must be given together");

  const sp::MechanicalSystem system = sp::build_system(cfg.system);
  const sp::ModalData modal = sp::solve_modes(system);
  const double omega = sp::resolve_omega(cfg.target, modal);
  const sp::IndexList sensors = resolve_sensors(a.sensors, system, modal, omega, cfg);
  const sp::IndexList all = sp::iota_indices(system.dof());
  const sp::FrfMatrix h = sp::frf_direct(system, sensors, all, omega);

  sp::ReconstructionOptions ro;
  ro.snr_db = cfg.snr_db;
  ro.mu_fraction = cfg.mu_fraction;
  ro.weighting = cfg.weighting;
  ro.solver = cfg.solver;
  ro.seed = cfg.seed;

  int nonconverged = 0;
  if (a.map || !a.force) {
    const sp::ReconstructionMap map = sp::reconstruction_map(h, h, ro);
    nonconverged += map.nonconverged;
    sp::io::write_json_file(out / "map.json", sp::io::to_json(map));
    sp::io::write_text_file(out / "map.csv", csv_text([&](std::ostream& s) {
                              sp::io::write_magnitude_grid_csv(s, map.values);
                            }));
  }
  if (a.force) {
    const sp::Index f = *a.force;
    sp::require(f >= 0 && f < system.dof(), sp::ErrorCode::InvalidParameter,
                "--force outside [0, N)");
    // Same noise stream as row f of the map.
    sp::MeasurementVector y{omega, sensors,
                            sp::add_noise(h.values.col(f), cfg.snr_db,
                                          sp::split_seed(cfg.seed, 0, static_cast<std::uint64_t>(f)))};
    const sp::LassoSolution sol =
        sp::reconstruct(h, y, std::nullopt, cfg.mu_fraction, cfg.weighting, cfg.solver);
    if (!sol.converged) ++nonconverged;
    json j = solution_report(sol, sensors, cfg.mu_fraction);
    j["force_node"] = f;
    j["omega"] = omega;
    sp::io::write_json_file(out / "reconstruct.json", j);
    sp::io::write_text_file(out / "measurement.csv", csv_text([&](std::ostream& s) {
                              sp::io::write_measurement_csv(s, y);
                            }));
    sp::io::write_text_file(out / "frf.csv", csv_text([&](std::ostream& s) { sp::io::write_frf_csv(s, h); }));
  }
  return finish(c, nonconverged);
}

int reconstruct_from_file(const Common& c, const std::string& h_file, const std::string& y_file,
                          const std::string& subset) {
  const sp::ExperimentConfig cfg = load(c);
  std::optional<sp::IndexList> nodes;
  if (!subset.empty()) nodes = parse_nodes(subset);
  const sp::LassoSolution sol = sp::reconstruct_from_file(h_file, y_file, nodes, cfg.mu_fraction,
                                                          cfg.weighting, cfg.solver);
  const sp::IndexList used = nodes ? *nodes : sp::io::load_measurement(y_file).sensors;
  sp::io::write_json_file(fs::path(c.out) / "reconstruct.json",
                          solution_report(sol, used, cfg.mu_fraction));
  return finish(c, sol.converged ? 0 : 1);
}

// ---------------------------------------------------------------- sweep

int sweep(const Common& c, bool gram_only) {
  const sp::ExperimentConfig cfg = load(c);
  sp::require(!cfg.grid_hz.empty(), sp::ErrorCode::InvalidParameter,
              "sweep needs a frequency_grid in the config");
  const sp::MechanicalSystem system = sp::build_system(cfg.system);

  sp::SweepOptions opts;
  opts.budget = cfg.budget;
  opts.snr_db = cfg.snr_db;
  opts.mu_fraction = cfg.mu_fraction;
  opts.weighting = cfg.weighting;
  opts.solver = cfg.solver;
  opts.seed = cfg.seed;
  opts.repeats = cfg.repeats;
  opts.reconstruct = !gram_only;
  opts.antinodal = cfg.antinodal;
  const sp::SweepReport report = sp::frequency_sweep(system, cfg.grid_hz, opts);

  const fs::path out = c.out;
  json j = sp::io::to_json(report);
  j["config"] = sp::to_json(cfg);
  sp::io::write_json_file(out / "sweep.json", j);
  sp::io::write_text_file(out / "sweep.csv", csv_text([&](std::ostream& s) { sp::io::write_sweep_csv(s, report); }));
  sp::io::write_text_file(out / "activation.csv", csv_text([&](std::ostream& s) {
                            sp::io::write_activation_csv(s, report, system.dof());
                          }));
  return finish(c, report.nonconverged);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config, "JSON experiment config")->check(CLI::ExistingFile);
  sub->add_option("-o,--out", c.out, "output directory")->capture_default_str();
  sub->add_flag("--allow-nonconverged", c.allow_nonconverged,
                "exit 0 even if some LASSO solves hit max_iter");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram-based sensor placement and sparse force reconstruction"};
  app.require_subcommand(1);
  Common common;

  auto* sim_chain = app.add_subcommand("simulate-chain", "build the chain system, write modes, FRF and Gram");
  add_common(sim_chain, common);
  auto* sim_irr = app.add_subcommand("simulate-irregular", "build a random irregular system");
  add_common(sim_irr, common);
  std::optional<std::uint64_t> irr_seed;
  sim_irr->add_option("--seed", irr_seed, "overrides system.seed");

  auto* place_cmd = app.add_subcommand("place", "greedy placement at the target frequency");
  add_common(place_cmd, common);
  std::optional<sp::Index> budget;
  place_cmd->add_option("-b,--budget", budget, "overrides config budget");

  auto* rec = app.add_subcommand("reconstruct", "simulate y and solve the LASSO");
  add_common(rec, common);
  ReconstructArgs ra;
  rec->add_option("--frf", ra.h_file, "FRF file (.json or .csv) instead of the config system");
  rec->add_option("--measurement", ra.y_file, "measurement file (.json or .csv)");
  rec->add_option("--sensors", ra.sensors, "greedy | full | antinodal | comma separated nodes")
      ->capture_default_str();
  rec->add_option("--force", ra.force, "single unit force at this node (0-based)");
  rec->add_flag("--map", ra.map, "also write the full N x N reconstruction map");

  auto* rff = app.add_subcommand("reconstruct-from-file", "solve the LASSO on supplied H and y");
  add_common(rff, common);
  std::string h_file, y_file, subset;
  rff->add_option("--frf", h_file, "FRF file (.json or .csv)")->required()->check(CLI::ExistingFile);
  rff->add_option("--measurement", y_file, "measurement file (.json or .csv)")->required()->check(CLI::ExistingFile);
  rff->add_option("--sensors", subset, "comma separated subset of measured nodes");

  auto* sweep_cmd = app.add_subcommand("sweep", "placement, Gram norms and OD-MAE over the grid");
  add_common(sweep_cmd, common);
  bool gram_only = false;
  sweep_cmd->add_flag("--gram-only", gram_only, "skip the reconstruction maps");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim_chain) {
      sp::ExperimentConfig cfg = load(common);
      sp::require(std::holds_alternative<sp::ChainParams>(cfg.system), sp::ErrorCode::InvalidParameter,
                  "simulate-chain needs system.type = chain");
      return simulate(common, sp::build_system(cfg.system), cfg);
    }
    if (*sim_irr) {
      sp::ExperimentConfig cfg = load(common);
      if (!std::holds_alternative<sp::IrregularParams>(cfg.system)) cfg.system = sp::IrregularParams{};
      if (irr_seed) std::get<sp::IrregularParams>(cfg.system).seed = *irr_seed;
      return simulate(common, sp::build_system(cfg.system), cfg);
    }
    if (*place_cmd) return place(common, budget);
    if (*rec) return reconstruct(common, ra);
    if (*rff) return reconstruct_from_file(common, h_file, y_file, subset);
    if (*sweep_cmd) return sweep(common, gram_only);
  } catch (const sp::Error& e) {
    std::cerr << "error [" << sp::to_string(e.code()) << "]: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
