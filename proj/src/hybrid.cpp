#include "qclone/hybrid.hpp"

#include <cmath>
#include <string>

#include "qclone/analysis.hpp"
#include "qclone/errors.hpp"

namespace qclone {

namespace {

constexpr double kConstraintTol = 1e-12;
constexpr double kBoundSlack = 1e-12;

const double kPcMajor = 0.5 + 1.0 / std::sqrt(8.0);
const double kPcMinor = 0.5 - 1.0 / std::sqrt(8.0);

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

double require(const std::optional<double>& v, const char* name) {
  if (!v) throw MissingParameter(std::string("missing parameter '") + name + "'");
  return *v;
}

ComplexMatrix blend(double lambda, const ComplexMatrix& first,
                    const ComplexMatrix& second) {
  return cplx{lambda} * first + cplx{1.0 - lambda} * second;
}

/// w|psi><psi| + (1 - w)|psi_perp><psi_perp|
ComplexMatrix keep_weighted(const PureQubit& psi, double w) {
  const auto amp = psi.amplitudes();
  const auto perp = orthogonal_state(psi).amplitudes();
  return cplx{w} * ComplexMatrix::outer(amp, amp) +
         cplx{1.0 - w} * ComplexMatrix::outer(perp, perp);
}

double phasecov_xi(const HybridParams& params) {
  if (params.xi) return *params.xi;
  if (params.alpha_sq) return phasecov_hybrid_xi(*params.alpha_sq);
  throw MissingParameter("bh_phasecov needs 'xi' or 'alpha_sq'");
}

}  // namespace

CloningIsometry combine(const HybridSpec& spec) {
  check_lambda(spec.lambda);
  const CloningIsometry v1 = build_machine(spec.first);
  const CloningIsometry v2 = build_machine(spec.second);
  const std::size_t m1 = v1.machine_dim();
  const std::size_t m2 = v2.machine_dim();
  const std::size_t m = m1 + m2;
  const double w1 = std::sqrt(spec.lambda);
  const double w2 = std::sqrt(1.0 - spec.lambda);
  ComplexMatrix v(4 * m, 2);
  for (std::size_t ab = 0; ab < 4; ++ab) {
    for (std::size_t col = 0; col < 2; ++col) {
      for (std::size_t k = 0; k < m1; ++k) {
        v(ab * m + k, col) = w1 * v1.matrix()(ab * m1 + k, col);
      }
      for (std::size_t k = 0; k < m2; ++k) {
        v(ab * m + m1 + k, col) = w2 * v2.matrix()(ab * m2 + k, col);
      }
    }
  }
  return CloningIsometry(std::move(v), SubsystemLayout{2, 2, m});
}

BhPairParams BhPairParams::constrained(double xi, double xi_prime, double lambda) {
  const EtaPair etas = eta_pair(xi, xi_prime, lambda);
  return BhPairParams{xi, xi_prime, etas.eta, etas.eta_prime, lambda};
}

double BhPairParams::constraint_residual() const {
  return mixed_eta() - (1.0 - 2.0 * mixed_xi());
}

HybridSpec BhPairParams::hybrid() const {
  return HybridSpec{lambda, MachineSpec::bh_type(xi, eta),
                    MachineSpec::bh_type(xi_prime, eta_prime)};
}

double hcm_fidelity(const BhPairParams& params) {
  const double residual = params.constraint_residual();
  if (!(std::abs(residual) <= kConstraintTol)) {
    throw ConstraintError("eta' (1 - lambda) + eta lambda differs from "
                          "1 - 2 xi' - 2 lambda (xi - xi') by " +
                          std::to_string(residual));
  }
  return (1.0 - params.xi_prime) - params.lambda * (params.xi - params.xi_prime);
}

double hcm_distortion(double alpha_sq, const BhPairParams& params) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
    throw DomainError("alpha^2 must lie in [0, 1]");
  }
  const double a = std::sqrt(alpha_sq);
  const double b = std::sqrt(1.0 - alpha_sq);
  const double lam = params.lambda;
  const double keep = lam * (1.0 - 2.0 * params.xi) +
                      (1.0 - lam) * (1.0 - 2.0 * params.xi_prime);
  const double half_eta = params.eta * lam / 2.0 + (1.0 - lam) * params.eta_prime / 2.0;
  const double r2 = std::sqrt(2.0);

  const double u11 = a * a * a * a - a * a * keep;
  const double u12 = r2 * a * a * a * b - r2 * a * b * half_eta;
  const double u13 = a * a * b * b;
  const double u22 = 2.0 * a * a * b * b -
                     (2.0 * params.xi * lam + 2.0 * params.xi_prime * (1.0 - lam));
  const double u23 = r2 * a * b * b * b - r2 * a * b * half_eta;
  const double u33 = b * b * b * b - b * b * keep;
  return u11 * u11 + 2.0 * u12 * u12 + 2.0 * u13 * u13 + u22 * u22 +
         2.0 * u23 * u23 + u33 * u33;
}

double hcm_distortion_fixed_prime(double alpha_sq, double xi, double lambda) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
    throw DomainError("alpha^2 must lie in [0, 1]");
  }
  const double a = std::sqrt(alpha_sq);
  const double b = std::sqrt(1.0 - alpha_sq);
  const double keep = lambda * (1.0 - 2.0 * xi) + (1.0 - lambda) * (2.0 / 3.0);
  const double half_eta = 1.0 / 3.0 - lambda * (xi - 1.0 / 6.0);
  const double r2 = std::sqrt(2.0);

  const double v11 = a * a * a * a - a * a * keep;
  const double v12 = r2 * a * a * a * b - r2 * a * b * half_eta;
  const double v13 = a * a * b * b;
  const double v22 = 2.0 * a * a * b * b - (2.0 * xi * lambda + (1.0 - lambda) / 3.0);
  const double v23 = r2 * a * b * b * b - r2 * a * b * half_eta;
  const double v33 = b * b * b * b - b * b * keep;
  return v11 * v11 + 2.0 * v12 * v12 + 2.0 * v13 * v13 + v22 * v22 +
         2.0 * v23 * v23 + v33 * v33;
}

EtaPair eta_pair(double xi, double xi_prime, double lambda) {
  if (!(xi >= 0.0 && xi <= 0.5 && xi_prime >= 0.0 && xi_prime <= 0.5)) {
    throw DomainError("xi and xi' must lie in [0, 1/2]");
  }
  check_lambda(lambda);
  const double bound = schwarz_bound(xi);
  const double bound_prime = schwarz_bound(xi_prime);
  const double required = 1.0 - 2.0 * (lambda * xi + (1.0 - lambda) * xi_prime);
  const double reachable = lambda * bound + (1.0 - lambda) * bound_prime;
  if (reachable < required - kBoundSlack) {
    throw Infeasible("no eta pair for xi=" + std::to_string(xi) +
                     ", xi'=" + std::to_string(xi_prime) +
                     ", lambda=" + std::to_string(lambda) + ": need " +
                     std::to_string(required) + ", bounds reach " +
                     std::to_string(reachable));
  }
  EtaPair out{1.0 - 2.0 * xi, 1.0 - 2.0 * xi_prime};
  if (out.eta > bound + kBoundSlack) {
    out.eta = bound;
    if (lambda < 1.0) out.eta_prime = (required - lambda * bound) / (1.0 - lambda);
  } else if (out.eta_prime > bound_prime + kBoundSlack) {
    out.eta_prime = bound_prime;
    if (lambda > 0.0) out.eta = (required - (1.0 - lambda) * bound_prime) / lambda;
  }
  return out;
}

HybridSpec hybrid_spec(HybridKind kind, double lambda, const HybridParams& params) {
  check_lambda(lambda);
  switch (kind) {
    case HybridKind::bh_bh: {
      const double xi = require(params.xi, "xi");
      const double xi_prime = require(params.xi_prime, "xi_prime");
      BhPairParams pair{xi, xi_prime, 0.0, 0.0, lambda};
      if (params.eta && params.eta_prime) {
        pair.eta = *params.eta;
        pair.eta_prime = *params.eta_prime;
      } else {
        pair = BhPairParams::constrained(xi, xi_prime, lambda);
      }
      return pair.hybrid();
    }
    case HybridKind::bh_phasecov: {
      const double xi = phasecov_xi(params);
      return HybridSpec{lambda, MachineSpec::bh_type(xi, 1.0 - 2.0 * xi),
                        MachineSpec::phase_covariant(params.plane)};
    }
    case HybridKind::bh_pauli: {
      const double p = require(params.p, "p");
      return HybridSpec{lambda, MachineSpec::pauli(p, 1.0 - p),
                        MachineSpec::bh_optimal()};
    }
    case HybridKind::bh_anti:
      return HybridSpec{lambda, MachineSpec::bh_optimal(),
                        MachineSpec::anti_clone()};
  }
  throw DomainError("unknown hybrid kind");
}

FidelityPair pair_fidelities(HybridKind kind, double lambda,
                             const HybridParams& params) {
  check_lambda(lambda);
  switch (kind) {
    case HybridKind::bh_phasecov: {
      const double f = kPcMajor + lambda * (kPcMinor - phasecov_xi(params));
      return {f, f};
    }
    case HybridKind::bh_pauli: {
      const double p = require(params.p, "p");
      if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
      const double den = p * p - p + 1.0;
      return {5.0 / 6.0 + (lambda / 2.0) * ((p * p + 1.0) / den - 5.0 / 3.0),
              5.0 / 6.0 + (lambda / 2.0) * ((p * p - 2.0 * p + 2.0) / den - 5.0 / 3.0)};
    }
    case HybridKind::bh_anti:
      return {5.0 * lambda / 6.0 + 2.0 * (1.0 - lambda) / 3.0,
              5.0 * lambda / 6.0 + (1.0 - lambda) / 3.0};
    case HybridKind::bh_bh:
      throw DomainError("bh_bh fidelity depends on the input; use hcm_fidelity");
  }
  throw DomainError("unknown hybrid kind");
}

MarginalPair hybrid_closed_form_marginal(HybridKind kind, double lambda,
                                         const PureQubit& psi,
                                         const HybridParams& params) {
  check_lambda(lambda);
  const double a2 = psi.alpha_sq();
  const double b2 = psi.beta_sq();
  const cplx ab = psi.alpha() * std::conj(psi.beta());
  const auto amp = psi.amplitudes();
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix proj = ComplexMatrix::outer(amp, amp);
  const ComplexMatrix bh_opt = keep_weighted(psi, 5.0 / 6.0);

  switch (kind) {
    case HybridKind::bh_bh: {
      if (!on_phase_circle(psi, PhasePlane::real_circle)) {
        throw DomainError("bh_bh closed form needs real amplitudes");
      }
      const double xi = require(params.xi, "xi");
      const double xi_prime = require(params.xi_prime, "xi_prime");
      const double eta = require(params.eta, "eta");
      const double eta_prime = require(params.eta_prime, "eta_prime");
      const double shift = (xi_prime + lambda * (xi - xi_prime)) * (b2 - a2);
      const double off = eta_prime + lambda * (eta - eta_prime);
      const ComplexMatrix rho(2, 2, {a2 + shift, off * ab, off * std::conj(ab),
                                     b2 - shift});
      return {DensityOperator(rho), DensityOperator(rho)};
    }
    case HybridKind::bh_phasecov: {
      if (!on_phase_circle(psi, params.plane)) {
        throw DomainError("bh_phasecov closed form needs an input on the "
                          "phase-covariant plane");
      }
      const double xi = phasecov_xi(params);
      const ComplexMatrix rho =
          blend(lambda, keep_weighted(psi, 1.0 - xi), keep_weighted(psi, kPcMajor));
      return {DensityOperator(rho), DensityOperator(rho)};
    }
    case HybridKind::bh_pauli: {
      const double p = require(params.p, "p");
      const double q = 1.0 - p;
      const double n2 = 1.0 / (1.0 + p * p + q * q);
      const ComplexMatrix pauli_1 =
          cplx{n2 * (1.0 - q * q + p * p)} * proj + cplx{n2 * q * q} * id;
      const ComplexMatrix pauli_2 =
          cplx{n2 * (1.0 - p * p + q * q)} * proj + cplx{n2 * p * p} * id;
      return {DensityOperator(blend(lambda, pauli_1, bh_opt)),
              DensityOperator(blend(lambda, pauli_2, bh_opt))};
    }
    case HybridKind::bh_anti: {
      const double l = lambda;
      const double m = 1.0 - lambda;
      const ComplexMatrix rho_a(
          2, 2,
          {l * (5.0 * a2 / 6.0 + b2 / 6.0) + m * (2.0 * a2 / 3.0 + b2 / 3.0),
           (l * 2.0 / 3.0 + m / 3.0) * ab, (l * 2.0 / 3.0 + m / 3.0) * std::conj(ab),
           l * (5.0 * b2 / 6.0 + a2 / 6.0) + m * (a2 / 3.0 + 2.0 * b2 / 3.0)});
      const ComplexMatrix rho_b(
          2, 2,
          {l * (5.0 * a2 / 6.0 + b2 / 6.0) + m * (a2 / 3.0 + 2.0 * b2 / 3.0),
           (l * 2.0 / 3.0 - m / 3.0) * ab, (l * 2.0 / 3.0 - m / 3.0) * std::conj(ab),
           l * (5.0 * b2 / 6.0 + a2 / 6.0) + m * (2.0 * a2 / 3.0 + b2 / 3.0)});
      return {DensityOperator(rho_a), DensityOperator(rho_b)};
    }
  }
  throw DomainError("unknown hybrid kind");
}

}  // namespace qclone
