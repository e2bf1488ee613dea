#include "qclone/state.hpp"

#include <cmath>
#include <string>

#include "qclone/errors.hpp"
#include "qclone/kernels.hpp"

namespace qclone {

PureQubit pure_state(cplx alpha, cplx beta) {
  const double norm_sq = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(norm_sq)) throw InvalidState("amplitudes must be finite");
  if (norm_sq <= 0.0) throw InvalidState("zero vector is not a state");
  const double norm = std::sqrt(norm_sq);
  const bool normalized = std::abs(norm_sq - 1.0) <= 1e-12;
  return PureQubit(alpha / norm, beta / norm, normalized);
}

PureQubit real_state(double alpha_sq, double sign) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
    throw DomainError("alpha^2 must lie in [0, 1], got " +
                      std::to_string(alpha_sq));
  }
  const double b = std::sqrt(1.0 - alpha_sq);
  return pure_state(std::sqrt(alpha_sq), sign < 0.0 ? -b : b);
}

PureQubit orthogonal_state(const PureQubit& psi) {
  return pure_state(std::conj(psi.beta()), -std::conj(psi.alpha()));
}

std::string density_violation(const ComplexMatrix& m) {
  if (!m.is_square()) return "matrix is not square";
  if (!is_hermitian(m, DensityOperator::kHermitianTol)) return "not Hermitian";
  const cplx tr = trace(m);
  if (std::abs(tr - cplx{1.0, 0.0}) > DensityOperator::kTraceTol) {
    return "trace " + std::to_string(tr.real()) + " is not 1";
  }
  const double min_eig = eigh(m).values.front();
  if (min_eig < -DensityOperator::kEigenTol) {
    return "negative eigenvalue " + std::to_string(min_eig);
  }
  return {};
}

DensityOperator::DensityOperator(ComplexMatrix matrix, SubsystemLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (layout_.total() != matrix_.rows()) {
    throw DimensionError("density layout does not match matrix dimension");
  }
  if (std::string why = density_violation(matrix_); !why.empty()) {
    throw InvalidState("not a density operator: " + why);
  }
}

DensityOperator::DensityOperator(ComplexMatrix matrix)
    : DensityOperator(matrix, SubsystemLayout{matrix.rows()}) {}

DensityOperator density_of(const PureQubit& psi) {
  const auto amp = psi.amplitudes();
  return DensityOperator(ComplexMatrix::outer(amp, amp));
}

DensityOperator product_density(const PureQubit& psi) {
  const auto amp = psi.amplitudes();
  const std::array<cplx, 4> pair{amp[0] * amp[0], amp[0] * amp[1],
                                 amp[1] * amp[0], amp[1] * amp[1]};
  return DensityOperator(ComplexMatrix::outer(pair, pair), SubsystemLayout{2, 2});
}

double fidelity(const PureQubit& psi, const DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("fidelity needs a single-qubit density, got dimension " +
                         std::to_string(rho.dim()));
  }
  const auto amp = psi.amplitudes();
  cplx q = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) q += std::conj(amp[i]) * rho(i, j) * amp[j];
  }
  return q.real();
}

double hs_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("hs_distance: dimensions " + std::to_string(rho.dim()) +
                         " and " + std::to_string(sigma.dim()));
  }
  return kernels::diff_norm_sq(rho.matrix().data(), sigma.matrix().data());
}

std::array<double, 3> bloch_vector(const PureQubit& psi) {
  const cplx c = std::conj(psi.alpha()) * psi.beta();
  return {2.0 * c.real(), 2.0 * c.imag(), psi.alpha_sq() - psi.beta_sq()};
}

DensityOperator shrunk_density(const PureQubit& psi, double shrink) {
  const auto [x, y, z] = bloch_vector(psi);
  // (I + s (x X + y Y + z Z)) / 2
  return DensityOperator(ComplexMatrix(
      2, 2,
      {0.5 * (1.0 + shrink * z), 0.5 * shrink * cplx{x, -y},
       0.5 * shrink * cplx{x, y}, 0.5 * (1.0 - shrink * z)}));
}

}  // namespace qclone
