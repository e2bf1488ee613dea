#pragma once

#include <array>
#include <string>

#include "qclone/matrix.hpp"

namespace qclone {

/// Normalized qubit alpha|0> + beta|1>.
class PureQubit {
 public:
  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  /// True when the amplitudes passed to pure_state already had unit norm
  /// (within 1e-12).
  bool was_normalized() const { return was_normalized_; }

  std::array<cplx, 2> amplitudes() const { return {alpha_, beta_}; }
  double alpha_sq() const { return std::norm(alpha_); }
  double beta_sq() const { return std::norm(beta_); }

 private:
  friend PureQubit pure_state(cplx alpha, cplx beta);
  PureQubit(cplx alpha, cplx beta, bool was_normalized)
      : alpha_(alpha), beta_(beta), was_normalized_(was_normalized) {}

  cplx alpha_;
  cplx beta_;
  bool was_normalized_;
};

/// Normalizes (alpha, beta). Throws InvalidState for the zero vector or
/// non-finite amplitudes.
PureQubit pure_state(cplx alpha, cplx beta);

/// sqrt(a2)|0> + sign * sqrt(1 - a2)|1>, the real-amplitude family used by the
/// state-dependent machines. Throws DomainError unless 0 <= a2 <= 1.
PureQubit real_state(double alpha_sq, double sign = 1.0);

/// conj(beta)|0> - conj(alpha)|1>.
PureQubit orthogonal_state(const PureQubit& psi);

/// Hermitian, unit-trace, positive semidefinite operator over a layout.
class DensityOperator {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenTol = 1e-10;

  /// Validates all three invariants; throws InvalidState with the violated
  /// one otherwise.
  DensityOperator(ComplexMatrix matrix, SubsystemLayout layout);
  /// Single-factor layout.
  explicit DensityOperator(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return matrix_.rows(); }

  cplx operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

 private:
  ComplexMatrix matrix_;
  SubsystemLayout layout_;
};

/// Describes why `m` is not a density operator, or returns empty.
std::string density_violation(const ComplexMatrix& m);

/// |psi><psi|
DensityOperator density_of(const PureQubit& psi);

/// |psi psi><psi psi| on layout (2, 2).
DensityOperator product_density(const PureQubit& psi);

/// <psi|rho|psi> for a 2x2 rho.
double fidelity(const PureQubit& psi, const DensityOperator& rho);

/// Tr[(rho - sigma)^2], computed as sum_ij |rho_ij - sigma_ij|^2.
double hs_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// Bloch vector (x, y, z) of a pure qubit.
std::array<double, 3> bloch_vector(const PureQubit& psi);

/// (I + shrink * n.sigma) / 2 for the Bloch direction n of psi.
DensityOperator shrunk_density(const PureQubit& psi, double shrink);

}  // namespace qclone
