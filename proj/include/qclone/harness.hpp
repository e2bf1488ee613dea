#pragma once

// Table reproduction, the verification suite and config-driven sweeps behind
// the qclone command-line tool.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qclone/cloners.hpp"
#include "qclone/errors.hpp"

namespace qclone::harness {

/// Bad command-line input or sweep configuration (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// x rounded half away from zero to `decimals` places, in fixed notation.
/// Negative zero prints as zero.
std::string format_fixed(double x, int decimals);

/// Value that format_fixed(x, decimals) prints.
double round_half_away(double x, int decimals);

const std::vector<std::string>& table_names();

/// CSV for one of table_names(). Throws UsageError for any other name.
std::string run_table(const std::string& name);

// ---------------------------------------------------------------- sweeps

/// Machine identifiers accepted by sweeps and the fidelity subcommand:
/// wz, bh, pc, pauli, anti, bh-bh, bh-pc, bh-pauli, bh-anti.
const std::vector<std::string>& machine_ids();

/// Output columns: F_a, F_b, D_a, D_b, D_ab.
const std::vector<std::string>& output_ids();

using ParamMap = std::map<std::string, double>;

struct PointResult {
  std::map<std::string, double> values;  // every output id
  bool infeasible = false;
  std::string note;  // why, when infeasible
};

/// Evaluates one machine on the input sqrt(alpha2)|0> + e^{i phi} sqrt(1 -
/// alpha2)|1> (defaults alpha2 = 0.5, phi = 0) through the constructive
/// pipeline. Parameters the machine cannot realize give infeasible = true;
/// unknown or missing parameters throw UsageError.
PointResult evaluate_point(const std::string& machine, const ParamMap& params);

struct SweepConfig {
  std::string machine;
  ParamMap fixed;
  std::string sweep_param;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::vector<std::string> outputs;
};

/// key=value lines with '#' comments. Reserved keys: machine, sweep, start,
/// stop, step, outputs (comma separated). Every other key is a fixed numeric
/// parameter. Throws UsageError on anything malformed.
SweepConfig parse_sweep_config(std::istream& in);

/// Checks the invariants and that the machine knows every parameter.
void validate(const SweepConfig& config);

/// start, start + step, ... up to stop (within step * 1e-9).
std::vector<double> sweep_grid(const SweepConfig& config);

/// CSV with columns <sweep_param>, outputs..., flag. Points are evaluated on
/// up to `threads` workers (0: hardware concurrency) and written in grid
/// order.
std::string run_sweep(const SweepConfig& config, unsigned threads = 0);

// ---------------------------------------------------------------- verify

using MachineBuilder = std::function<CloningIsometry(const MachineSpec&)>;

struct VerifyOptions {
  double tol = 1e-10;
  std::uint64_t seed = 42;
  MachineBuilder builder = build_machine;  // replaceable for fault injection
};

struct GroupResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;  // full parameter set of the first failing case

  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<GroupResult> groups;

  bool passed() const;
  /// One line per group, then the first failing case if any.
  std::string text() const;
};

/// Throws UsageError unless tol > 0.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace qclone::harness
