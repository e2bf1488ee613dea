#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qclone/analysis.hpp"
#include "qclone/harness.hpp"
#include "qclone/hybrid.hpp"

namespace qclone::harness {

namespace {

const std::set<std::string> kInputParams{"alpha2", "phi"};

struct MachineParams {
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::map<std::string, MachineParams>& machine_table() {
  static const std::map<std::string, MachineParams> table{
      {"wz", {{}, {}}},
      {"bh", {{}, {"xi", "eta"}}},
      {"pc", {{}, {}}},
      {"pauli", {{"p"}, {"q"}}},
      {"anti", {{}, {}}},
      {"bh-bh", {{"lambda", "xi", "xi_prime"}, {"eta", "eta_prime"}}},
      {"bh-pc", {{"lambda"}, {"xi"}}},
      {"bh-pauli", {{"lambda", "p"}, {}}},
      {"bh-anti", {{"lambda"}, {}}},
  };
  return table;
}

const MachineParams& params_of(const std::string& machine) {
  const auto it = machine_table().find(machine);
  if (it == machine_table().end()) {
    throw UsageError("unknown machine '" + machine + "'");
  }
  return it->second;
}

bool accepts(const MachineParams& mp, const std::string& key) {
  return kInputParams.count(key) || mp.required.count(key) || mp.optional.count(key);
}

std::optional<double> lookup(const ParamMap& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

CloningIsometry machine_for(const std::string& id, const ParamMap& params) {
  const auto get = [&params](const char* k) { return lookup(params, k); };
  if (id == "wz") return build_machine(MachineSpec::wz());
  if (id == "bh") {
    const double xi = get("xi").value_or(1.0 / 6.0);
    return build_machine(MachineSpec::bh_type(xi, get("eta").value_or(1.0 - 2.0 * xi)));
  }
  if (id == "pc") return build_machine(MachineSpec::phase_covariant());
  if (id == "pauli") {
    const double p = *get("p");
    return build_machine(MachineSpec::pauli(p, get("q").value_or(1.0 - p)));
  }
  if (id == "anti") return build_machine(MachineSpec::anti_clone());

  const double lambda = *get("lambda");
  HybridParams hp;
  if (id == "bh-bh") {
    hp.xi = get("xi");
    hp.xi_prime = get("xi_prime");
    hp.eta = get("eta");
    hp.eta_prime = get("eta_prime");
    return combine(hybrid_spec(HybridKind::bh_bh, lambda, hp));
  }
  if (id == "bh-pc") {
    hp.xi = get("xi");
    hp.alpha_sq = get("alpha2").value_or(0.5);
    return combine(hybrid_spec(HybridKind::bh_phasecov, lambda, hp));
  }
  if (id == "bh-pauli") {
    hp.p = get("p");
    return combine(hybrid_spec(HybridKind::bh_pauli, lambda, hp));
  }
  if (id == "bh-anti") return combine(hybrid_spec(HybridKind::bh_anti, lambda, hp));
  throw UsageError("unknown machine '" + id + "'");
}

double parse_number(const std::string& text, const std::string& key) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw UsageError("value of '" + key + "' is not a finite number: '" + text + "'");
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_sweep_value(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

const std::vector<std::string>& machine_ids() {
  static const std::vector<std::string> ids{"wz",    "bh",    "pc",       "pauli",
                                            "anti",  "bh-bh", "bh-pc",    "bh-pauli",
                                            "bh-anti"};
  return ids;
}

const std::vector<std::string>& output_ids() {
  static const std::vector<std::string> ids{"F_a", "F_b", "D_a", "D_b", "D_ab"};
  return ids;
}

PointResult evaluate_point(const std::string& machine, const ParamMap& params) {
  const MachineParams& mp = params_of(machine);
  for (const auto& [key, value] : params) {
    if (!accepts(mp, key)) {
      throw UsageError("machine '" + machine + "' has no parameter '" + key + "'");
    }
  }
  for (const auto& key : mp.required) {
    if (!params.count(key)) {
      throw UsageError("machine '" + machine + "' needs parameter '" + key + "'");
    }
  }

  PointResult out;
  try {
    const double alpha_sq = lookup(params, "alpha2").value_or(0.5);
    const double phi = lookup(params, "phi").value_or(0.0);
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
      throw DomainError("alpha2 must lie in [0, 1]");
    }
    const PureQubit psi =
        pure_state(std::sqrt(alpha_sq), std::polar(std::sqrt(1.0 - alpha_sq), phi));
    const Marginals m = marginals(apply(machine_for(machine, params), psi));
    const DensityOperator ideal = density_of(psi);
    out.values["F_a"] = fidelity(psi, m.a);
    out.values["F_b"] = fidelity(psi, m.b);
    out.values["D_a"] = hs_distance(m.a, ideal);
    out.values["D_b"] = hs_distance(m.b, ideal);
    out.values["D_ab"] = hs_distance(m.ab, product_density(psi));
  } catch (const UsageError&) {
    throw;
  } catch (const MissingParameter& e) {
    throw UsageError(e.what());
  } catch (const Error& e) {
    // Unrealizable or out-of-domain parameter combinations.
    out.infeasible = true;
    out.note = e.what();
    for (const auto& id : output_ids()) out.values[id] = std::nan("");
  }
  return out;
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig c;
  std::set<std::string> seen;
  bool has_outputs = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError("line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(key).second) {
      throw UsageError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    if (key == "machine") {
      c.machine = value;
    } else if (key == "sweep") {
      c.sweep_param = value;
    } else if (key == "start") {
      c.start = parse_number(value, key);
    } else if (key == "stop") {
      c.stop = parse_number(value, key);
    } else if (key == "step") {
      c.step = parse_number(value, key);
    } else if (key == "outputs") {
      has_outputs = true;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) c.outputs.push_back(trim(item));
    } else {
      c.fixed[key] = parse_number(value, key);
    }
  }
  for (const char* key : {"machine", "sweep", "start", "stop", "step"}) {
    if (!seen.count(key)) throw UsageError(std::string("missing key '") + key + "'");
  }
  if (!has_outputs) throw UsageError("missing key 'outputs'");
  validate(c);
  return c;
}

void validate(const SweepConfig& c) {
  const MachineParams& mp = params_of(c.machine);
  if (!(c.step > 0.0)) throw UsageError("step must be positive");
  if (!(c.start <= c.stop)) throw UsageError("start must not exceed stop");
  if (c.fixed.count(c.sweep_param)) {
    throw UsageError("'" + c.sweep_param + "' is both swept and fixed");
  }
  if (!accepts(mp, c.sweep_param)) {
    throw UsageError("machine '" + c.machine + "' has no parameter '" +
                     c.sweep_param + "'");
  }
  for (const auto& [key, value] : c.fixed) {
    if (!accepts(mp, key)) {
      throw UsageError("machine '" + c.machine + "' has no parameter '" + key + "'");
    }
  }
  for (const auto& key : mp.required) {
    if (key != c.sweep_param && !c.fixed.count(key)) {
      throw UsageError("machine '" + c.machine + "' needs parameter '" + key + "'");
    }
  }
  if (c.outputs.empty()) throw UsageError("outputs must list at least one column");
  const auto& known = output_ids();
  for (const auto& o : c.outputs) {
    if (std::find(known.begin(), known.end(), o) == known.end()) {
      throw UsageError("unknown output '" + o + "'");
    }
  }
  if ((c.stop - c.start) / c.step > 1e7) throw UsageError("grid has too many points");
}

std::vector<double> sweep_grid(const SweepConfig& c) {
  const double span = (c.stop - c.start) / c.step;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = c.start + static_cast<double>(i) * c.step;
    if (std::abs(x - c.stop) <= c.step * 1e-9) x = c.stop;
    grid[i] = x;
  }
  return grid;
}

std::string run_sweep(const SweepConfig& config, unsigned threads) {
  validate(config);
  const std::vector<double> grid = sweep_grid(config);
  std::vector<std::string> rows(grid.size());

  auto row_for = [&](double x) {
    ParamMap params = config.fixed;
    params[config.sweep_param] = x;
    const PointResult r = evaluate_point(config.machine, params);
    std::string row = format_sweep_value(x);
    for (const auto& o : config.outputs) {
      row += ',';
      row += r.infeasible ? "nan" : format_sweep_value(r.values.at(o));
    }
    row += r.infeasible ? ",infeasible" : ",";
    return row;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = row_for(grid[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::string csv = config.sweep_param;
  for (const auto& o : config.outputs) csv += ',' + o;
  csv += ",flag\n";
  for (const auto& row : rows) csv += row + '\n';
  return csv;
}

}  // namespace qclone::harness
