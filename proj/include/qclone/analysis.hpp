#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qclone/cloners.hpp"
#include "qclone/hybrid.hpp"

namespace qclone {

/// State-dependent optimum of the BH-type + optimal-BH hybrid (xi' = 1/6).
struct OptimumReport {
  double xi_star = 0.0;
  double lambda_low = 0.0;   // may equal lambda_high at alpha_sq in {0, 1}
  double lambda_high = 1.0;
  double d_min = 0.0;        // 2 s - 9 s^2 / 2, s = alpha^2 beta^2
  double fidelity = 1.0;     // 1 - 3 s / 4
  bool feasible = false;
  std::string reason;        // empty when feasible
};

/// xi* = (9 s - 2 (1 - lambda)) / (12 lambda). Infeasible when xi* leaves
/// [0, 1/2] or no eta pair exists for (xi*, 1/6, lambda). Throws
/// DivisionDomain for lambda == 0 and DomainError outside the domain.
OptimumReport optimal_xi(double alpha_sq, double lambda);

/// Range of xi* as lambda runs over the report's lambda range, intersected
/// with [0, 1/2].
struct XiInterval {
  double low;
  double high;
};
XiInterval optimal_xi_interval(double alpha_sq);

/// 3 alpha_sq (1 - alpha_sq) / 4
double phasecov_hybrid_xi(double alpha_sq);

struct UniversalityLambda {
  double lambda;
  bool in_unit_interval;
};

/// (6 xi' - 1) / (6 (xi' - xi)). Throws DegenerateError if |xi - xi'| <= 1e-12.
UniversalityLambda universality_lambda(double xi, double xi_prime);

/// Trapezoid rule over alpha_sq in [0, 1] of hs_distance(rho_a, |chi><chi|)
/// with real amplitudes. Throws DomainError for n_points < 2.
double average_distortion(const MachineSpec& spec, std::size_t n_points);

struct UniversalityReport {
  double fidelity_spread = 0.0;    // max - min of F_a
  double distortion_spread = 0.0;  // max - min of D_ab
  double fidelity_min = 0.0;
  double fidelity_max = 0.0;
  std::size_t grid_size = 0;
};

/// Constructive scan over real-amplitude inputs sqrt(a)|0> + sqrt(1-a)|1>.
/// Throws DomainError for an empty grid.
UniversalityReport universality_scan(const CloningIsometry& machine,
                                     const std::vector<double>& alpha_sq_grid);
UniversalityReport universality_scan(const MachineSpec& spec,
                                     const std::vector<double>& alpha_sq_grid);
UniversalityReport universality_scan(const HybridSpec& spec,
                                     const std::vector<double>& alpha_sq_grid);

/// Same over n Haar-random pure states (complex amplitudes).
UniversalityReport universality_scan_haar(const CloningIsometry& machine,
                                          std::size_t n_states, std::uint64_t seed);

/// n equally spaced points in [0, 1].
std::vector<double> unit_grid(std::size_t n);

/// alpha|0> + beta|1>, alpha|0> - beta|1>, alpha|1> + beta|0>, alpha|1> - beta|0>.
std::vector<PureQubit> four_state_family(double alpha_sq);

}  // namespace qclone
