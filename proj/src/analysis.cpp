#include "qclone/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qclone/errors.hpp"

namespace qclone {

namespace {

void check_alpha_sq(double alpha_sq) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
    throw DomainError("alpha^2 must lie in [0, 1], got " + std::to_string(alpha_sq));
  }
}

double xi_at(double s, double lambda) {
  return (9.0 * s - 2.0 * (1.0 - lambda)) / (12.0 * lambda);
}

struct Sample {
  double fidelity;
  double distortion;
};

Sample sample(const CloningIsometry& machine, const PureQubit& psi) {
  const Marginals m = marginals(apply(machine, psi));
  return {fidelity(psi, m.a), hs_distance(m.ab, product_density(psi))};
}

UniversalityReport summarize(const std::vector<Sample>& samples) {
  UniversalityReport r;
  r.grid_size = samples.size();
  const auto [fmin, fmax] = std::minmax_element(
      samples.begin(), samples.end(),
      [](const Sample& x, const Sample& y) { return x.fidelity < y.fidelity; });
  const auto [dmin, dmax] = std::minmax_element(
      samples.begin(), samples.end(),
      [](const Sample& x, const Sample& y) { return x.distortion < y.distortion; });
  r.fidelity_min = fmin->fidelity;
  r.fidelity_max = fmax->fidelity;
  r.fidelity_spread = fmax->fidelity - fmin->fidelity;
  r.distortion_spread = dmax->distortion - dmin->distortion;
  return r;
}

}  // namespace

OptimumReport optimal_xi(double alpha_sq, double lambda) {
  check_alpha_sq(alpha_sq);
  if (lambda == 0.0) throw DivisionDomain("optimal xi is undefined at lambda = 0");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw DomainError("lambda must lie in (0, 1], got " + std::to_string(lambda));
  }
  const double s = alpha_sq * (1.0 - alpha_sq);
  OptimumReport r;
  r.xi_star = xi_at(s, lambda);
  r.lambda_low = std::max(0.0, 1.0 - 4.5 * s);
  r.lambda_high = 1.0;
  r.d_min = 2.0 * s - 4.5 * s * s;
  r.fidelity = 1.0 - 0.75 * s;

  if (r.xi_star < 0.0) {
    r.reason = "xi* = " + std::to_string(r.xi_star) + " is negative";
  } else if (r.xi_star > 0.5) {
    r.reason = "xi* = " + std::to_string(r.xi_star) + " exceeds 1/2";
  } else {
    try {
      eta_pair(r.xi_star, 1.0 / 6.0, lambda);
    } catch (const Infeasible& e) {
      r.reason = e.what();
    }
  }
  r.feasible = r.reason.empty();
  return r;
}

XiInterval optimal_xi_interval(double alpha_sq) {
  check_alpha_sq(alpha_sq);
  const double s = alpha_sq * (1.0 - alpha_sq);
  const double at_one = xi_at(s, 1.0);
  const double slope = 2.0 - 9.0 * s;  // sign of d xi* / d lambda
  if (slope > 0.0) {
    // Increasing in lambda; zero at the lower end of the lambda range.
    const double lambda_low = std::max(0.0, 1.0 - 4.5 * s);
    const double at_low = lambda_low > 0.0 ? xi_at(s, lambda_low) : 0.0;
    return {std::clamp(at_low, 0.0, 0.5), std::clamp(at_one, 0.0, 0.5)};
  }
  if (slope < 0.0) {
    // Decreasing in lambda and unbounded as lambda -> 0.
    return {std::clamp(at_one, 0.0, 0.5), 0.5};
  }
  return {at_one, at_one};
}

double phasecov_hybrid_xi(double alpha_sq) {
  check_alpha_sq(alpha_sq);
  return 0.75 * alpha_sq * (1.0 - alpha_sq);
}

UniversalityLambda universality_lambda(double xi, double xi_prime) {
  if (std::abs(xi - xi_prime) <= 1e-12) {
    throw DegenerateError("xi == xi': the hybrid reduces to a single BH machine");
  }
  const double lambda = (6.0 * xi_prime - 1.0) / (6.0 * (xi_prime - xi));
  return {lambda, lambda >= 0.0 && lambda <= 1.0};
}

double average_distortion(const MachineSpec& spec, std::size_t n_points) {
  if (n_points < 2) throw DomainError("average_distortion needs at least 2 points");
  const CloningIsometry machine = build_machine(spec);
  const double h = 1.0 / static_cast<double>(n_points - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double a = (i + 1 == n_points) ? 1.0 : static_cast<double>(i) * h;
    const PureQubit psi = real_state(a);
    const double d = hs_distance(marginals(apply(machine, psi)).a, density_of(psi));
    sum += (i == 0 || i + 1 == n_points) ? 0.5 * d : d;
  }
  return sum * h;
}

UniversalityReport universality_scan(const CloningIsometry& machine,
                                     const std::vector<double>& alpha_sq_grid) {
  if (alpha_sq_grid.empty()) throw DomainError("universality_scan needs a grid");
  std::vector<Sample> samples;
  samples.reserve(alpha_sq_grid.size());
  for (double a : alpha_sq_grid) samples.push_back(sample(machine, real_state(a)));
  return summarize(samples);
}

UniversalityReport universality_scan(const MachineSpec& spec,
                                     const std::vector<double>& alpha_sq_grid) {
  return universality_scan(build_machine(spec), alpha_sq_grid);
}

UniversalityReport universality_scan(const HybridSpec& spec,
                                     const std::vector<double>& alpha_sq_grid) {
  return universality_scan(combine(spec), alpha_sq_grid);
}

UniversalityReport universality_scan_haar(const CloningIsometry& machine,
                                          std::size_t n_states, std::uint64_t seed) {
  if (n_states == 0) throw DomainError("universality_scan_haar needs n_states > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Sample> samples;
  samples.reserve(n_states);
  for (std::size_t i = 0; i < n_states; ++i) {
    const cplx a{gauss(rng), gauss(rng)};
    const cplx b{gauss(rng), gauss(rng)};
    samples.push_back(sample(machine, pure_state(a, b)));
  }
  return summarize(samples);
}

std::vector<double> unit_grid(std::size_t n) {
  if (n < 2) throw DomainError("unit_grid needs at least 2 points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

std::vector<PureQubit> four_state_family(double alpha_sq) {
  check_alpha_sq(alpha_sq);
  const double a = std::sqrt(alpha_sq);
  const double b = std::sqrt(1.0 - alpha_sq);
  return {pure_state(a, b), pure_state(a, -b), pure_state(b, a), pure_state(b, -a)};
}

}  // namespace qclone
