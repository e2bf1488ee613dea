// qclone: reproduce the cloning tables, run the verification suite, and
// evaluate machines over parameter sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qclone/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

using qclone::harness::UsageError;

int cmd_table(const std::string& name) {
  std::cout << qclone::harness::run_table(name);
  return kExitOk;
}

int cmd_verify(double tol, std::uint64_t seed) {
  qclone::harness::VerifyOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  const auto report = qclone::harness::run_verify(opt);
  std::cout << report.text();
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              unsigned threads) {
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot read config '" + config_path + "'");
  const auto config = qclone::harness::parse_sweep_config(in);
  const std::string csv = qclone::harness::run_sweep(config, threads);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << csv;
  return kExitOk;
}

int cmd_fidelity(const std::string& machine, const qclone::harness::ParamMap& params) {
  const auto r = qclone::harness::evaluate_point(machine, params);
  if (r.infeasible) {
    std::cerr << "infeasible: " << r.note << '\n';
    return kExitUsage;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "F_a=%.12f\nF_b=%.12f\n", r.values.at("F_a"),
                r.values.at("F_b"));
  std::cout << buf;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum cloning machine simulator"};
  app.require_subcommand(1);

  std::string table_name;
  auto* table = app.add_subcommand("table", "Print a reproduction table as CSV");
  table->add_option("name", table_name, "pauli | statedep | bh-pauli | bh-anti")
      ->required();

  double tol = 1e-10;
  std::uint64_t seed = 42;
  auto* verify = app.add_subcommand("verify", "Run the invariant and oracle suite");
  verify->add_option("--tol", tol, "Absolute tolerance")->capture_default_str();
  verify->add_option("--seed", seed, "Seed for randomized cases")->capture_default_str();

  std::string config_path;
  std::string out_path;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a machine over a parameter grid");
  sweep->add_option("--config", config_path, "key=value config file")->required();
  sweep->add_option("--out", out_path, "CSV output path")->required();
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)");

  std::string machine;
  std::optional<double> alpha2, phi, xi, eta, xi_prime, eta_prime, p, q, lambda;
  auto* fid = app.add_subcommand("fidelity", "Fidelities of both copies for one input");
  fid->add_option("--machine", machine, "wz | bh | pc | pauli | anti | bh-bh | bh-pc | "
                                        "bh-pauli | bh-anti")
      ->required();
  fid->add_option("--alpha2", alpha2, "Input |alpha|^2")->required();
  fid->add_option("--phi", phi, "Relative phase of the input");
  fid->add_option("--xi", xi);
  fid->add_option("--eta", eta);
  fid->add_option("--xi-prime", xi_prime);
  fid->add_option("--eta-prime", eta_prime);
  fid->add_option("--p", p);
  fid->add_option("--q", q);
  fid->add_option("--lambda", lambda);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*table) return cmd_table(table_name);
    if (*verify) return cmd_verify(tol, seed);
    if (*sweep) return cmd_sweep(config_path, out_path, threads);
    qclone::harness::ParamMap params;
    auto put = [&params](const char* key, const std::optional<double>& v) {
      if (v) params[key] = *v;
    };
    put("alpha2", alpha2);
    put("phi", phi);
    put("xi", xi);
    put("eta", eta);
    put("xi_prime", xi_prime);
    put("eta_prime", eta_prime);
    put("p", p);
    put("q", q);
    put("lambda", lambda);
    return cmd_fidelity(machine, params);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
