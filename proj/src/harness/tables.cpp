#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qclone/analysis.hpp"
#include "qclone/harness.hpp"
#include "qclone/hybrid.hpp"

namespace qclone::harness {

namespace {

// Universal machines are evaluated on this input; any state gives the same row.
PureQubit probe_state() { return real_state(0.3); }

double tenth(int i) { return static_cast<double>(i) / 10.0; }

FidelityPair constructive(const CloningIsometry& machine) {
  const PureQubit psi = probe_state();
  const Marginals m = marginals(apply(machine, psi));
  return {fidelity(psi, m.a), fidelity(psi, m.b)};
}

/// Difference of the two fidelities as printed, i.e. after rounding each.
std::string printed_diff(const FidelityPair& f) {
  return format_fixed(std::abs(round_half_away(f.a, 2) - round_half_away(f.b, 2)), 2);
}

std::string pauli_table() {
  std::ostringstream os;
  os << "p,F1,F2,diff\n";
  for (int i = 0; i <= 10; ++i) {
    const double p = tenth(i);
    const FidelityPair f = constructive(build_machine(MachineSpec::pauli(p, 1.0 - p)));
    os << format_fixed(p, 2) << ',' << format_fixed(f.a, 2) << ','
       << format_fixed(f.b, 2) << ',' << printed_diff(f) << '\n';
  }
  return os.str();
}

std::string bh_pauli_table() {
  std::ostringstream os;
  os << "p,lambda,F1,F2,diff\n";
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double p = tenth(i);
      const double lambda = tenth(j);
      HybridParams params;
      params.p = p;
      const FidelityPair f =
          constructive(combine(hybrid_spec(HybridKind::bh_pauli, lambda, params)));
      os << format_fixed(p, 2) << ',' << format_fixed(lambda, 2) << ','
         << format_fixed(f.a, 2) << ',' << format_fixed(f.b, 2) << ','
         << printed_diff(f) << '\n';
    }
  }
  return os.str();
}

std::string bh_anti_table() {
  std::ostringstream os;
  os << "lambda,Fa,Fb,diff\n";
  for (int j = 0; j <= 10; ++j) {
    const double lambda = tenth(j);
    const FidelityPair f =
        constructive(combine(hybrid_spec(HybridKind::bh_anti, lambda, {})));
    os << format_fixed(lambda, 2) << ',' << format_fixed(f.a, 2) << ','
       << format_fixed(f.b, 2) << ',' << printed_diff(f) << '\n';
  }
  return os.str();
}

/// True when no lambda in the report's range admits an eta pair at xi*.
bool optimum_never_feasible(double alpha_sq, double lambda_low) {
  constexpr int kSteps = 100;
  for (int k = 0; k <= kSteps; ++k) {
    const double lambda = lambda_low + (1.0 - lambda_low) * k / kSteps;
    if (lambda <= 0.0) continue;
    if (optimal_xi(alpha_sq, lambda).feasible) return false;
  }
  return true;
}

std::string statedep_table() {
  std::ostringstream os;
  os << "alpha2,lambda_low,lambda_high,xi_low,xi_high,D_min,F,flag\n";
  for (int i = 1; i <= 5; ++i) {
    const double alpha_sq = tenth(i);
    const OptimumReport at_one = optimal_xi(alpha_sq, 1.0);
    const XiInterval xi = optimal_xi_interval(alpha_sq);

    std::string flag;
    auto add_flag = [&flag](const char* f) {
      if (!flag.empty()) flag += ';';
      flag += f;
    };
    // With lambda at the bottom of its range xi* should reach zero; when it
    // cannot, the interval does not have the form (0, xi(lambda = 1)).
    if (xi.low > 0.0) add_flag("paper-discrepancy");
    if (optimum_never_feasible(alpha_sq, at_one.lambda_low)) add_flag("eta-infeasible");

    os << format_fixed(alpha_sq, 2) << ',' << format_fixed(at_one.lambda_low, 3)
       << ',' << format_fixed(at_one.lambda_high, 3) << ','
       << format_fixed(xi.low, 4) << ',' << format_fixed(xi.high, 4) << ','
       << format_fixed(at_one.d_min, 2) << ',' << format_fixed(at_one.fidelity, 2)
       << ',' << flag << '\n';
  }
  return os.str();
}

}  // namespace

const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names{"pauli", "statedep", "bh-pauli",
                                              "bh-anti"};
  return names;
}

std::string run_table(const std::string& name) {
  if (name == "pauli") return pauli_table();
  if (name == "statedep") return statedep_table();
  if (name == "bh-pauli") return bh_pauli_table();
  if (name == "bh-anti") return bh_anti_table();
  throw UsageError("unknown table '" + name + "' (expected pauli, statedep, "
                   "bh-pauli or bh-anti)");
}

}  // namespace qclone::harness
