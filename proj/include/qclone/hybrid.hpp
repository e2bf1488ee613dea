#pragma once

// Hybrid machines: two base machines weighted by amplitudes sqrt(lambda) and
// sqrt(1 - lambda), each tagged by its own block of the machine space.

#include <optional>

#include "qclone/cloners.hpp"

namespace qclone {

struct HybridSpec {
  double lambda = 1.0;  // weight of `first`, in [0, 1]
  MachineSpec first;
  MachineSpec second;
};

/// Direct-sum isometry [sqrt(lambda) V1 ; sqrt(1 - lambda) V2] with machine
/// dimension M1 + M2. Throws DomainError for lambda outside [0, 1].
CloningIsometry combine(const HybridSpec& spec);

/// Two BH-type machines mixed with weight lambda on (xi, eta).
struct BhPairParams {
  double xi = 1.0 / 6.0;
  double xi_prime = 1.0 / 6.0;
  double eta = 2.0 / 3.0;
  double eta_prime = 2.0 / 3.0;
  double lambda = 1.0;

  /// Fills (eta, eta_prime) from eta_pair. Throws Infeasible.
  static BhPairParams constrained(double xi, double xi_prime, double lambda);

  /// lambda xi + (1 - lambda) xi'
  double mixed_xi() const { return lambda * xi + (1.0 - lambda) * xi_prime; }
  /// lambda eta + (1 - lambda) eta'
  double mixed_eta() const { return lambda * eta + (1.0 - lambda) * eta_prime; }
  /// lambda eta + (1 - lambda) eta' - (1 - 2 mixed_xi); zero when the
  /// fidelity is input independent.
  double constraint_residual() const;

  HybridSpec hybrid() const;
};

/// (1 - xi') - lambda (xi - xi'). Throws ConstraintError unless
/// |constraint_residual| <= 1e-12.
double hcm_fidelity(const BhPairParams& params);

/// Tr[(rho_ab - rho_ab^id)^2] for real amplitudes, as the six-term sum over
/// the distinct entries of the symmetric-subspace difference.
double hcm_distortion(double alpha_sq, const BhPairParams& params);

/// hcm_distortion with xi' = 1/6 and the etas eliminated through the
/// constraint, so that it depends on (alpha_sq, xi, lambda) only.
double hcm_distortion_fixed_prime(double alpha_sq, double xi, double lambda);

/// Shrinking-factor pair satisfying the constraint with each component inside
/// [0, schwarz_bound]. Starts from (1 - 2 xi, 1 - 2 xi'); a component over
/// its bound is clamped and the other re-solved. Throws Infeasible when
/// lambda f(xi) + (1 - lambda) f(xi') falls short of 1 - 2 mixed_xi, and
/// DomainError for arguments outside [0, 1/2] x [0, 1/2] x [0, 1].
struct EtaPair {
  double eta;
  double eta_prime;
};
EtaPair eta_pair(double xi, double xi_prime, double lambda);

enum class HybridKind { bh_bh, bh_phasecov, bh_pauli, bh_anti };

/// Optional machine parameters for the hybrid families. Which fields are
/// required depends on the kind:
///   bh_bh:       xi, xi_prime, eta, eta_prime
///   bh_phasecov: xi, or alpha_sq to use 3 alpha_sq (1 - alpha_sq) / 4;
///                the BH part has eta = 1 - 2 xi
///   bh_pauli:    p, with q = 1 - p
///   bh_anti:     none
struct HybridParams {
  std::optional<double> xi;
  std::optional<double> xi_prime;
  std::optional<double> eta;
  std::optional<double> eta_prime;
  std::optional<double> p;
  std::optional<double> alpha_sq;
  PhasePlane plane = PhasePlane::equator;
};

/// The HybridSpec each family denotes. bh_pauli puts the Pauli machine first
/// (weight lambda) and the optimal BH machine second; the other families put
/// the BH-type machine first. Throws MissingParameter.
HybridSpec hybrid_spec(HybridKind kind, double lambda, const HybridParams& params);

/// Closed-form fidelities of both outputs against the input:
///   bh_phasecov: F1 = F2 = (1/2 + 1/sqrt 8) + lambda (1/2 - 1/sqrt 8 - xi)
///   bh_pauli:    F1 = 5/6 + (lambda/2) [(p^2 + 1)/(p^2 - p + 1) - 5/3]
///                F2 = 5/6 + (lambda/2) [(p^2 - 2p + 2)/(p^2 - p + 1) - 5/3]
///   bh_anti:     Fa = 5 lambda/6 + 2 (1 - lambda)/3, Fb = 5 lambda/6 + (1 - lambda)/3
/// Throws MissingParameter, and DomainError for kind bh_bh (input dependent).
FidelityPair pair_fidelities(HybridKind kind, double lambda,
                             const HybridParams& params = {});

/// Closed-form one-copy marginals of a hybrid family. bh_bh requires a real
/// relative phase; bh_phasecov requires psi on the phase-covariant plane.
/// Both raise DomainError otherwise.
MarginalPair hybrid_closed_form_marginal(HybridKind kind, double lambda,
                                         const PureQubit& psi,
                                         const HybridParams& params);

}  // namespace qclone
