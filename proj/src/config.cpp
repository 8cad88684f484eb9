#include "sensorplace/config.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "sensorplace/errors.hpp"
#include "sensorplace/io.hpp"

namespace sensorplace {

using nlohmann::json;

namespace {

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  require(j.is_object(), ErrorCode::Parse, std::string(where) + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    require(ok.count(item.key()) > 0, ErrorCode::Parse,
            std::string("unknown key '") + item.key() + "' in " + where);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

SystemSpec system_from(const json& j) {
  const std::string type = j.value("type", std::string("chain"));
  if (type == "chain") {
    check_keys(j, "system", {"type", "n", "mass", "stiffness", "alpha", "beta"});
    ChainParams p;
    read(j, "n", p.n);
    read(j, "mass", p.mass_each);
    read(j, "stiffness", p.stiffness_each);
    read(j, "alpha", p.alpha);
    read(j, "beta", p.beta);
    return p;
  }
  if (type == "irregular") {
    check_keys(j, "system", {"type", "n", "seed", "lambda_min", "lambda_max", "zeta_min",
                             "zeta_max", "coupling", "max_retries"});
    IrregularParams p;
    read(j, "n", p.n);
    read(j, "seed", p.seed);
    read(j, "lambda_min", p.lambda_min);
    read(j, "lambda_max", p.lambda_max);
    read(j, "zeta_min", p.zeta_min);
    read(j, "zeta_max", p.zeta_max);
    read(j, "coupling", p.coupling);
    read(j, "max_retries", p.max_retries);
    return p;
  }
  if (type == "file") {
    check_keys(j, "system", {"type", "path"});
    return SystemFile{j.at("path").get<std::string>()};
  }
  fail(ErrorCode::Parse, "unknown system type '" + type + "' (chain, irregular, file)");
}

json system_to(const SystemSpec& spec) {
  if (const auto* c = std::get_if<ChainParams>(&spec))
    return {{"type", "chain"}, {"n", c->n}, {"mass", c->mass_each},
            {"stiffness", c->stiffness_each}, {"alpha", c->alpha}, {"beta", c->beta}};
  if (const auto* r = std::get_if<IrregularParams>(&spec))
    return {{"type", "irregular"}, {"n", r->n}, {"seed", r->seed},
            {"lambda_min", r->lambda_min}, {"lambda_max", r->lambda_max},
            {"zeta_min", r->zeta_min}, {"zeta_max", r->zeta_max},
            {"coupling", r->coupling}, {"max_retries", r->max_retries}};
  return {{"type", "file"}, {"path", std::get<SystemFile>(spec).path.string()}};
}

}  // namespace

std::vector<double> linear_grid(double start, double stop, double step) {
  require(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step),
          ErrorCode::InvalidParameter, "grid bounds must be finite");
  require(step > 0.0 && stop >= start, ErrorCode::InvalidParameter,
          "grid needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

PenaltyWeighting weighting_from_string(const std::string& name) {
  if (name == "unit") return PenaltyWeighting::Unit;
  if (name == "column_norm") return PenaltyWeighting::ColumnNorm;
  fail(ErrorCode::Parse, "unknown weighting '" + name + "' (unit, column_norm)");
}

const char* to_string(PenaltyWeighting weighting) {
  return weighting == PenaltyWeighting::Unit ? "unit" : "column_norm";
}

ExperimentConfig config_from_json(const json& j) {
  try {
    check_keys(j, "config", {"system", "target", "frequency_grid", "budget", "snr_db",
                             "mu_fraction", "seed", "repeats", "weighting", "solver",
                             "antinodal"});
    ExperimentConfig c;
    if (j.contains("system")) c.system = system_from(j.at("system"));
    if (j.contains("target")) {
      const json& t = j.at("target");
      check_keys(t, "target", {"frequency_hz", "mode_number", "factor"});
      if (t.contains("frequency_hz") && !t.at("frequency_hz").is_null())
        c.target.frequency_hz = t.at("frequency_hz").get<double>();
      read(t, "mode_number", c.target.mode_number);
      read(t, "factor", c.target.factor);
    }
    if (j.contains("frequency_grid")) {
      const json& g = j.at("frequency_grid");
      if (g.contains("values_hz")) {
        check_keys(g, "frequency_grid", {"values_hz"});
        c.grid_hz = g.at("values_hz").get<std::vector<double>>();
      } else {
        check_keys(g, "frequency_grid", {"start_hz", "stop_hz", "step_hz"});
        c.grid_hz = linear_grid(g.at("start_hz").get<double>(), g.at("stop_hz").get<double>(),
                                g.at("step_hz").get<double>());
      }
    }
    read(j, "budget", c.budget);
    // JSON cannot hold infinity; null means noise-free.
    if (j.contains("snr_db"))
      c.snr_db = j.at("snr_db").is_null() ? kNoiseFree : j.at("snr_db").get<double>();
    read(j, "mu_fraction", c.mu_fraction);
    read(j, "seed", c.seed);
    read(j, "repeats", c.repeats);
    if (j.contains("weighting")) c.weighting = weighting_from_string(j.at("weighting").get<std::string>());
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      check_keys(s, "solver", {"tol", "max_iter"});
      read(s, "tol", c.solver.tol);
      read(s, "max_iter", c.solver.max_iter);
    }
    if (j.contains("antinodal")) {
      const json& a = j.at("antinodal");
      check_keys(a, "antinodal", {"min_spacing", "local_extrema_only"});
      if (a.contains("min_spacing") && !a.at("min_spacing").is_null())
        c.antinodal.min_spacing = a.at("min_spacing").get<Index>();
      read(a, "local_extrema_only", c.antinodal.local_extrema_only);
    }

    require(c.budget >= 1, ErrorCode::InvalidParameter, "budget must be >= 1");
    require(c.mu_fraction > 0.0, ErrorCode::InvalidParameter, "mu_fraction must be positive");
    require(c.repeats >= 1, ErrorCode::InvalidParameter, "repeats must be >= 1");
    require(c.solver.tol > 0.0 && c.solver.max_iter >= 1, ErrorCode::InvalidParameter,
            "solver needs tol > 0 and max_iter >= 1");
    require(c.target.factor > 0.0, ErrorCode::InvalidParameter, "target factor must be positive");
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("config: ") + e.what());
  }
}

json to_json(const ExperimentConfig& c) {
  json target = {{"mode_number", c.target.mode_number}, {"factor", c.target.factor}};
  if (c.target.frequency_hz) target["frequency_hz"] = *c.target.frequency_hz;
  return {{"system", system_to(c.system)},
          {"target", target},
          {"frequency_grid", {{"values_hz", c.grid_hz}}},
          {"budget", c.budget},
          {"snr_db", std::isfinite(c.snr_db) ? json(c.snr_db) : json(nullptr)},
          {"mu_fraction", c.mu_fraction},
          {"seed", c.seed},
          {"repeats", c.repeats},
          {"weighting", to_string(c.weighting)},
          {"solver", {{"tol", c.solver.tol}, {"max_iter", c.solver.max_iter}}},
          {"antinodal",
           {{"min_spacing", c.antinodal.min_spacing ? json(*c.antinodal.min_spacing) : json(nullptr)},
            {"local_extrema_only", c.antinodal.local_extrema_only}}}};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  ExperimentConfig c = config_from_json(io::read_json_file(path));
  // System files are resolved relative to the config file.
  if (auto* f = std::get_if<SystemFile>(&c.system); f && f->path.is_relative())
    f->path = path.parent_path() / f->path;
  return c;
}

MechanicalSystem build_system(const SystemSpec& spec) {
  if (const auto* c = std::get_if<ChainParams>(&spec)) return build_chain(*c);
  if (const auto* r = std::get_if<IrregularParams>(&spec)) return build_irregular(*r);
  return io::system_from_json(io::read_json_file(std::get<SystemFile>(spec).path));
}

double resolve_omega(const TargetSpec& target, const ModalData& modal) {
  if (target.frequency_hz) {
    require(std::isfinite(*target.frequency_hz) && *target.frequency_hz > 0.0,
            ErrorCode::InvalidParameter, "target frequency must be positive");
    return 2.0 * std::numbers::pi * *target.frequency_hz;
  }
  require(target.mode_number >= 1 && target.mode_number <= modal.size(),
          ErrorCode::InvalidParameter,
          "target mode_number " + std::to_string(target.mode_number) + " outside [1, " +
              std::to_string(modal.size()) + "]");
  return target.factor * modal.natural_freqs(target.mode_number - 1);
}

}  // namespace sensorplace
