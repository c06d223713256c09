// Copyright 2026 The ghawkes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghawkes/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "ghawkes/errors.hpp"

namespace ghawkes {
namespace {

using nlohmann::json;

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> table = {
      {"meanfield-linear", R"({
  "name": "meanfield-linear",
  "kernel": {"type": "constant", "c": 1.0},
  "response": {"type": "linear", "mu": 1.0},
  "memory": {"type": "exponential", "alpha": 2.0},
  "drive": {"eta_inf": 0.0},
  "sizes": [250, 500, 1000, 2000],
  "rho": {"rule": "constant", "value": 1.0},
  "tau": 0.25,
  "horizon_exponent": 1,
  "t_f": 1.0,
  "eps": 0.25,
  "replicas": 20,
  "master_seed": 20261017,
  "grid": 512,
  "ode_grid": 32,
  "finite_time": {"horizon": 10.0},
  "phase": {"l1_norms": [0.25, 0.5, 0.8, 1.25, 2.0], "n": 1000, "t_end": 60.0, "tail_start": 30.0},
  "noise": {"horizon": 10.0, "observe_dt": 0.5},
  "output_dir": "out/meanfield-linear"
})"},
      {"erdos-renyi-diluted", R"({
  "name": "erdos-renyi-diluted",
  "kernel": {"type": "constant", "c": 1.0},
  "response": {"type": "sigmoid", "lambda_max": 2.0, "slope": 1.0, "threshold": 1.0},
  "memory": {"type": "exponential", "alpha": 1.0},
  "drive": {"eta_inf": 0.0},
  "sizes": [500, 1000, 2000, 4000],
  "rho": {"rule": "power", "exponent": 0.25},
  "tau": 0.25,
  "horizon_exponent": 1,
  "t_f": 1.0,
  "eps": 0.25,
  "replicas": 20,
  "master_seed": 20261018,
  "grid": 512,
  "ode_grid": 32,
  "graph_diag": {"pair_budget": 200000, "quadrature": 16, "dilution_floor": 10.0},
  "output_dir": "out/erdos-renyi-diluted"
})"},
      {"edd", R"({
  "name": "edd",
  "kernel": {"type": "edd", "f": [0.5, 0.5], "g": [0.5, 0.5]},
  "response": {"type": "linear", "mu": 1.0},
  "memory": {"type": "exponential", "alpha": 2.0},
  "drive": {"eta_inf": 0.0},
  "sizes": [250, 500, 1000, 2000],
  "rho": {"rule": "constant", "value": 1.0},
  "tau": 0.25,
  "eps": 0.25,
  "replicas": 10,
  "master_seed": 20261019,
  "grid": 512,
  "ode_grid": 128,
  "output_dir": "out/edd"
})"},
      {"sbm", R"({
  "name": "sbm",
  "kernel": {"type": "sbm", "boundaries": [0.0, 0.5, 1.0], "p": [[0.9, 0.1], [0.1, 0.9]]},
  "response": {"type": "linear", "mu": 1.0},
  "memory": {"type": "exponential", "alpha": 1.0},
  "drive": {"eta_inf": 0.0},
  "sizes": [250, 500, 1000, 2000],
  "rho": {"rule": "constant", "value": 1.0},
  "tau": 0.25,
  "eps": 0.25,
  "replicas": 10,
  "master_seed": 20261020,
  "grid": 512,
  "ode_grid": 128,
  "output_dir": "out/sbm"
})"},
      {"pnearest", R"({
  "name": "pnearest",
  "kernel": {"type": "p_nearest", "r": 0.2},
  "response": {"type": "linear", "mu": 1.0},
  "memory": {"type": "exponential", "alpha": 1.0},
  "drive": {"eta_inf": 0.0},
  "sizes": [250, 500, 1000, 2000],
  "rho": {"rule": "constant", "value": 1.0},
  "tau": 0.25,
  "eps": 0.25,
  "replicas": 10,
  "master_seed": 20261021,
  "grid": 512,
  "ode_grid": 128,
  "output_dir": "out/pnearest"
})"},
  };
  return table;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail(where, "missing '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + "." + key, "must be finite");
  return d;
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(where, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::size_t count(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(where + "." + key, "expected a nonnegative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

// number -> constant; array -> polynomial coefficients (lowest order first);
// {"polynomial": [...]}, {"table": {"grid": [...], "values": [...]}} or
// {"csv": "path"}.
ScalarFunction parse_function(const json& v, const std::string& where, const std::filesystem::path& base) {
  try {
    if (v.is_number()) return ScalarFunction::constant(v.get<double>());
    if (v.is_array()) return ScalarFunction::polynomial(number_list(v, where));
    check_keys(v, where, {"polynomial", "table", "csv"});
    if (v.size() != 1) fail(where, "expected exactly one of polynomial, table, csv");
    if (v.contains("polynomial")) return ScalarFunction::polynomial(number_list(v.at("polynomial"), where));
    if (v.contains("table")) {
      const auto& t = v.at("table");
      check_keys(t, where + ".table", {"grid", "values"});
      if (!t.contains("grid") || !t.contains("values")) fail(where + ".table", "needs grid and values");
      return ScalarFunction::table(number_list(t.at("grid"), where), number_list(t.at("values"), where));
    }
    if (!v.at("csv").is_string()) fail(where + ".csv", "expected a path");
    std::filesystem::path p = v.at("csv").get<std::string>();
    if (p.is_relative()) p = base / p;
    return ScalarFunction::from_csv(p);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

SpatialKernel parse_kernel(const json& v, const std::filesystem::path& base) {
  const std::string where = "kernel";
  if (!v.is_object() || !v.contains("type") || !v.at("type").is_string()) fail(where, "needs a string 'type'");
  const auto type = v.at("type").get<std::string>();
  try {
    if (type == "constant") {
      check_keys(v, where, {"type", "c"});
      return SpatialKernel::constant(number(v, "c", where));
    }
    if (type == "exp_distance") {
      check_keys(v, where, {"type", "sigma"});
      return SpatialKernel::exp_distance(number(v, "sigma", where));
    }
    if (type == "edd") {
      check_keys(v, where, {"type", "f", "g"});
      if (!v.contains("f") || !v.contains("g")) fail(where, "edd needs f and g");
      return SpatialKernel::edd(parse_function(v.at("f"), where + ".f", base),
                                parse_function(v.at("g"), where + ".g", base));
    }
    if (type == "p_nearest") {
      check_keys(v, where, {"type", "r"});
      return SpatialKernel::p_nearest(number(v, "r", where));
    }
    if (type == "sbm") {
      check_keys(v, where, {"type", "boundaries", "p"});
      if (!v.contains("p") || !v.at("p").is_array()) fail(where, "sbm needs a block matrix p");
      std::vector<std::vector<double>> p;
      for (const auto& row : v.at("p")) p.push_back(number_list(row, where + ".p"));
      if (!v.contains("boundaries")) return SpatialKernel::sbm_equal(std::move(p));
      return SpatialKernel::sbm(number_list(v.at("boundaries"), where + ".boundaries"), std::move(p));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  fail(where, "unknown type '" + type + "'");
}

SynapticResponse parse_response(const json& v) {
  const std::string where = "response";
  if (!v.is_object() || !v.contains("type") || !v.at("type").is_string()) fail(where, "needs a string 'type'");
  const auto type = v.at("type").get<std::string>();
  try {
    if (type == "linear") {
      check_keys(v, where, {"type", "mu"});
      return SynapticResponse::linear(number_or(v, "mu", where, 0.0));
    }
    if (type == "sigmoid") {
      check_keys(v, where, {"type", "lambda_max", "slope", "threshold"});
      return SynapticResponse::sigmoid(number(v, "lambda_max", where), number(v, "slope", where),
                                       number(v, "threshold", where));
    }
    if (type == "constant") {
      check_keys(v, where, {"type", "c"});
      const double c = number(v, "c", where);
      if (c < 0.0) fail(where, "constant response needs c >= 0");
      return SynapticResponse::constant(c);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  fail(where, "unknown type '" + type + "'");
}

MemoryKernel parse_memory(const json& v) {
  const std::string where = "memory";
  if (!v.is_object() || !v.contains("type") || !v.at("type").is_string()) fail(where, "needs a string 'type'");
  const auto type = v.at("type").get<std::string>();
  try {
    if (type == "exponential") {
      check_keys(v, where, {"type", "alpha"});
      return MemoryKernel::exponential(number(v, "alpha", where));
    }
    if (type == "tabulated") {
      check_keys(v, where, {"type", "step", "samples", "from_exponential", "horizon"});
      const double step = number(v, "step", where);
      if (v.contains("samples")) return MemoryKernel::tabulated(number_list(v.at("samples"), where), step);
      const double alpha = number(v, "from_exponential", where);
      return MemoryKernel::tabulate(MemoryKernel::exponential(alpha), step, number(v, "horizon", where));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  fail(where, "unknown type '" + type + "'");
}

ExogenousDrive parse_drive(const json& v, const std::filesystem::path& base) {
  const std::string where = "drive";
  check_keys(v, where, {"eta_inf", "eta_zero", "beta"});
  if (!v.contains("eta_inf")) fail(where, "missing 'eta_inf'");
  auto eta_inf = parse_function(v.at("eta_inf"), where + ".eta_inf", base);
  try {
    if (!v.contains("eta_zero")) {
      if (v.contains("beta")) fail(where, "'beta' needs 'eta_zero'");
      return ExogenousDrive::stationary(std::move(eta_inf));
    }
    auto eta_zero = parse_function(v.at("eta_zero"), where + ".eta_zero", base);
    return ExogenousDrive::relaxation(std::move(eta_inf), std::move(eta_zero), number_or(v, "beta", where, 0.0));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

RhoRule parse_rho(const json& v) {
  RhoRule r;
  if (v.is_number()) {
    r.value = v.get<double>();
    return r;
  }
  check_keys(v, "rho", {"rule", "value", "exponent"});
  if (!v.contains("rule") || !v.at("rule").is_string()) fail("rho", "needs a string 'rule'");
  const auto rule = v.at("rule").get<std::string>();
  if (rule == "constant") {
    r.value = number(v, "value", "rho");
  } else if (rule == "power") {
    r.kind = RhoRule::Kind::kPower;
    r.exponent = number(v, "exponent", "rho");
    if (r.exponent < 0.0) fail("rho", "power exponent must be >= 0");
  } else {
    fail("rho", "unknown rule '" + rule + "'");
  }
  return r;
}

void validate(const ExperimentConfig& c) {
  if (!(c.eps > 0.0)) fail("eps", "must be positive");
  if (c.replicas < 1) fail("replicas", "must be at least 1");
  if (c.sizes.empty()) fail("sizes", "must not be empty");
  for (std::size_t n : c.sizes) {
    if (n < 16) fail("sizes", "every N must be at least 16");
    const double rho = c.rho.at(n);
    if (!(rho > 0.0 && rho <= 1.0)) fail("rho", "rho_N must lie in (0, 1] for N=" + std::to_string(n));
    if (rho * c.kernel.sup() > 1.0 + 1e-12) fail("rho", "rho_N * sup W exceeds 1 for N=" + std::to_string(n));
  }
  if (!(c.tau > 0.0 && c.tau < 0.5)) fail("tau", "must lie in (0, 1/2)");
  if (c.horizon_exponent < 1) fail("horizon_exponent", "must be at least 1");
  if (!(c.t_f > 0.0)) fail("t_f", "must be positive");
  if (c.grid < 2 || c.ode_grid < 2) fail("grid", "grids need at least 2 nodes");
  if (c.dt && !(*c.dt > 0.0)) fail("dt", "must be positive");
  if (c.observe_dt && !(*c.observe_dt > 0.0)) fail("observe_dt", "must be positive");
  if (c.macro_t_end && !(*c.macro_t_end > 0.0)) fail("macro.t_end", "must be positive");
  if (!(c.finite_time_horizon > 0.0)) fail("finite_time.horizon", "must be positive");
  if (c.phase.n < 16) fail("phase.n", "must be at least 16");
  if (!(c.phase.t_end > c.phase.tail_start && c.phase.tail_start >= 0.0)) {
    fail("phase", "needs 0 <= tail_start < t_end");
  }
  for (double l1 : c.phase.l1_norms) {
    if (!(l1 > 0.0)) fail("phase.l1_norms", "entries must be positive");
  }
  if (!(c.noise.horizon > 0.0) || !(c.noise.observe_dt > 0.0)) fail("noise", "horizon and observe_dt must be positive");
  if (c.graph_diag.pair_budget < 1 || c.graph_diag.quadrature < 1) fail("graph_diag", "budgets must be positive");
}

}  // namespace

double RhoRule::at(std::size_t n) const {
  if (kind == Kind::kConstant) return value;
  return std::pow(static_cast<double>(n), -exponent);
}

double ExperimentConfig::alpha() const {
  const auto a = memory.decay_rate();
  if (!a) throw ConfigError("memory: this experiment needs an exponential memory kernel");
  return *a;
}

double ExperimentConfig::resolved_dt() const {
  if (dt) return *dt;
  const auto a = memory.decay_rate();
  return 1e-3 / (a ? *a : 1.0);
}

double ExperimentConfig::resolved_observe_dt() const {
  if (observe_dt) return *observe_dt;
  const auto a = memory.decay_rate();
  return 0.1 / (a ? *a : 1.0);
}

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc, "config",
             {"name", "kernel", "response", "memory", "drive", "sizes", "rho", "tau", "horizon_exponent", "t_f",
              "eps", "replicas", "master_seed", "grid", "ode_grid", "dt", "observe_dt", "macro", "finite_time",
              "phase", "noise", "graph_diag", "output_dir", "threads"});
  ExperimentConfig c;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) fail("name", "expected a string");
    c.name = doc.at("name").get<std::string>();
  }
  for (const char* key : {"kernel", "response", "memory", "drive"}) {
    if (!doc.contains(key)) fail("config", std::string("missing '") + key + "'");
  }
  c.kernel = parse_kernel(doc.at("kernel"), base_dir);
  c.response = parse_response(doc.at("response"));
  c.memory = parse_memory(doc.at("memory"));
  c.drive = parse_drive(doc.at("drive"), base_dir);

  if (doc.contains("sizes")) {
    const auto& s = doc.at("sizes");
    if (!s.is_array()) fail("sizes", "expected an array of integers");
    c.sizes.clear();
    for (const auto& e : s) {
      if (!e.is_number_integer() || e.get<long long>() < 0) fail("sizes", "expected an array of integers");
      c.sizes.push_back(static_cast<std::size_t>(e.get<long long>()));
    }
  }
  if (doc.contains("rho")) c.rho = parse_rho(doc.at("rho"));
  c.tau = number_or(doc, "tau", "config", c.tau);
  if (doc.contains("horizon_exponent")) c.horizon_exponent = static_cast<int>(count(doc, "horizon_exponent", "config"));
  c.t_f = number_or(doc, "t_f", "config", c.t_f);
  c.eps = number_or(doc, "eps", "config", c.eps);
  if (doc.contains("replicas")) c.replicas = count(doc, "replicas", "config");
  if (doc.contains("master_seed")) {
    const auto& s = doc.at("master_seed");
    if (!s.is_number_integer()) fail("master_seed", "expected an integer");
    c.master_seed = s.is_number_unsigned() ? s.get<std::uint64_t>()
                                           : static_cast<std::uint64_t>(s.get<std::int64_t>());
  }
  if (doc.contains("grid")) c.grid = count(doc, "grid", "config");
  if (doc.contains("ode_grid")) c.ode_grid = count(doc, "ode_grid", "config");
  if (doc.contains("dt")) c.dt = number(doc, "dt", "config");
  if (doc.contains("observe_dt")) c.observe_dt = number(doc, "observe_dt", "config");
  if (doc.contains("macro")) {
    const auto& m = doc.at("macro");
    check_keys(m, "macro", {"t_end"});
    if (m.contains("t_end")) c.macro_t_end = number(m, "t_end", "macro");
  }
  if (doc.contains("finite_time")) {
    const auto& f = doc.at("finite_time");
    check_keys(f, "finite_time", {"horizon"});
    c.finite_time_horizon = number_or(f, "horizon", "finite_time", c.finite_time_horizon);
  }
  if (doc.contains("phase")) {
    const auto& p = doc.at("phase");
    check_keys(p, "phase", {"l1_norms", "n", "t_end", "tail_start"});
    if (p.contains("l1_norms")) c.phase.l1_norms = number_list(p.at("l1_norms"), "phase.l1_norms");
    if (p.contains("n")) c.phase.n = count(p, "n", "phase");
    c.phase.t_end = number_or(p, "t_end", "phase", c.phase.t_end);
    c.phase.tail_start = number_or(p, "tail_start", "phase", c.phase.tail_start);
  }
  if (doc.contains("noise")) {
    const auto& n = doc.at("noise");
    check_keys(n, "noise", {"horizon", "observe_dt"});
    c.noise.horizon = number_or(n, "horizon", "noise", c.noise.horizon);
    c.noise.observe_dt = number_or(n, "observe_dt", "noise", c.noise.observe_dt);
  }
  if (doc.contains("graph_diag")) {
    const auto& g = doc.at("graph_diag");
    check_keys(g, "graph_diag", {"pair_budget", "quadrature", "dilution_floor"});
    if (g.contains("pair_budget")) c.graph_diag.pair_budget = count(g, "pair_budget", "graph_diag");
    if (g.contains("quadrature")) c.graph_diag.quadrature = count(g, "quadrature", "graph_diag");
    c.graph_diag.dilution_floor = number_or(g, "dilution_floor", "graph_diag", c.graph_diag.dilution_floor);
  }
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) fail("output_dir", "expected a string");
    c.output_dir = doc.at("output_dir").get<std::string>();
  }
  if (doc.contains("threads")) c.threads = static_cast<unsigned>(std::max<std::size_t>(1, count(doc, "threads", "config")));
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

ExperimentConfig resolve_config(const std::string& name_or_path) {
  if (presets().count(name_or_path) && !std::filesystem::exists(name_or_path)) return preset(name_or_path);
  return load_config(name_or_path);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : presets()) out.push_back(name);
  return out;
}

const std::string& preset_json(const std::string& name) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError("unknown preset '" + name + "'");
  return it->second;
}

ExperimentConfig preset(const std::string& name) { return parse_config(preset_json(name)); }

}  // namespace ghawkes
