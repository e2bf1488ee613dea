#include "qclone/cloners.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qclone/errors.hpp"

namespace qclone {

namespace {

// Amplitudes of the phase-covariant transformation.
const double kPcMajor = 0.5 + 1.0 / std::sqrt(8.0);
const double kPcMinor = 0.5 - 1.0 / std::sqrt(8.0);

/// Writes coeff * |a b> (x) machine into column `col` of a (2,2,M) isometry.
void add_term(ComplexMatrix& v, std::size_t col, std::size_t a, std::size_t b,
              std::span<const cplx> machine, cplx coeff) {
  const std::size_t m = machine.size();
  for (std::size_t k = 0; k < m; ++k) {
    v((a * 2 + b) * m + k, col) += coeff * machine[k];
  }
}

std::vector<cplx> unit(std::size_t dim, std::size_t index) {
  std::vector<cplx> e(dim);
  e[index] = 1.0;
  return e;
}

CloningIsometry build_wz() {
  ComplexMatrix v(8, 2);
  const auto q0 = unit(2, 0), q1 = unit(2, 1);
  add_term(v, 0, 0, 0, q0, 1.0);
  add_term(v, 1, 1, 1, q1, 1.0);
  return CloningIsometry(std::move(v), SubsystemLayout{2, 2, 2});
}

CloningIsometry build_bh(double xi, double eta) {
  const auto states = gram_vectors(bh_gram(xi, eta));
  const auto& q0 = states[0];
  const auto& q1 = states[1];
  const auto& y0 = states[2];
  const auto& y1 = states[3];
  const std::size_t m = q0.size();
  ComplexMatrix v(4 * m, 2);
  add_term(v, 0, 0, 0, q0, 1.0);
  add_term(v, 0, 0, 1, y0, 1.0);
  add_term(v, 0, 1, 0, y0, 1.0);
  add_term(v, 1, 1, 1, q1, 1.0);
  add_term(v, 1, 0, 1, y1, 1.0);
  add_term(v, 1, 1, 0, y1, 1.0);
  return CloningIsometry(std::move(v), SubsystemLayout{2, 2, m});
}

CloningIsometry build_phase_covariant(PhasePlane plane) {
  ComplexMatrix v(8, 2);
  const auto up = unit(2, 0), down = unit(2, 1);
  const double half_sym = 0.5 / std::sqrt(2.0);  // (1/2) |+>, |+> = (|01>+|10>)/sqrt 2
  // |0> -> (c+|00> + c-|11>)|up> + (1/2)|+>|down>
  add_term(v, 0, 0, 0, up, kPcMajor);
  add_term(v, 0, 1, 1, up, kPcMinor);
  add_term(v, 0, 0, 1, down, half_sym);
  add_term(v, 0, 1, 0, down, half_sym);
  // |1> -> (c+|11> + c-|00>)|down> + (1/2)|+>|up>
  add_term(v, 1, 1, 1, down, kPcMajor);
  add_term(v, 1, 0, 0, down, kPcMinor);
  add_term(v, 1, 0, 1, up, half_sym);
  add_term(v, 1, 1, 0, up, half_sym);
  if (plane == PhasePlane::equator) {
    // R = exp(-i pi/4 X) takes the real circle onto the equator.
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix r(2, 2, {s, cplx{0.0, -s}, cplx{0.0, -s}, s});
    const ComplexMatrix out_rot = kron(kron(r, r), ComplexMatrix::identity(2));
    v = out_rot * v * dagger(r);
  }
  return CloningIsometry(std::move(v), SubsystemLayout{2, 2, 2});
}

CloningIsometry build_pauli(double p, double q) {
  ComplexMatrix v(8, 2);
  const auto up = unit(2, 0), down = unit(2, 1);
  const double n = 1.0 / std::sqrt(1.0 + p * p + q * q);
  // |0> -> N(|00>|up> + (p|01> + q|10>)|down>)
  add_term(v, 0, 0, 0, up, n);
  add_term(v, 0, 0, 1, down, n * p);
  add_term(v, 0, 1, 0, down, n * q);
  // |1> -> N(|11>|down> + (p|10> + q|01>)|up>)
  add_term(v, 1, 1, 1, down, n);
  add_term(v, 1, 1, 0, up, n * p);
  add_term(v, 1, 0, 1, up, n * q);
  return CloningIsometry(std::move(v), SubsystemLayout{2, 2, 2});
}

CloningIsometry build_anti_clone() {
  ComplexMatrix v(16, 2);
  const auto up = unit(4, 0), down = unit(4, 1), right = unit(4, 2),
             left = unit(4, 3);
  const double r6 = 1.0 / std::sqrt(6.0);
  const cplx phased = std::polar(1.0 / std::sqrt(2.0), std::acos(1.0 / std::sqrt(3.0)));
  // |0> -> r6|00>|up> + (phased|01> - r6|10>)|right> + r6|11>|left>
  add_term(v, 0, 0, 0, up, r6);
  add_term(v, 0, 0, 1, right, phased);
  add_term(v, 0, 1, 0, right, -r6);
  add_term(v, 0, 1, 1, left, r6);
  // |1> -> r6|11>|right> + (phased|10> - r6|01>)|up> + r6|00>|down>
  add_term(v, 1, 1, 1, right, r6);
  add_term(v, 1, 1, 0, up, phased);
  add_term(v, 1, 0, 1, up, -r6);
  add_term(v, 1, 0, 0, down, r6);
  return CloningIsometry(std::move(v), SubsystemLayout{2, 2, 4});
}

/// w_keep |psi><psi| + w_flip |psi_perp><psi_perp|
ComplexMatrix mix_with_orthogonal(const PureQubit& psi, double w_keep,
                                  double w_flip) {
  const auto amp = psi.amplitudes();
  const auto perp = orthogonal_state(psi).amplitudes();
  return cplx{w_keep} * ComplexMatrix::outer(amp, amp) +
         cplx{w_flip} * ComplexMatrix::outer(perp, perp);
}

}  // namespace

MachineSpec MachineSpec::wz() { return MachineSpec{}; }

MachineSpec MachineSpec::bh_type(double xi, double eta) {
  if (!(xi >= 0.0 && xi <= 0.5)) {
    throw DomainError("BH-type xi must lie in [0, 1/2], got " + std::to_string(xi));
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw DomainError("BH-type eta must be non-negative, got " + std::to_string(eta));
  }
  MachineSpec s;
  s.kind = MachineKind::bh_type;
  s.xi = xi;
  s.eta = eta;
  return s;
}

MachineSpec MachineSpec::bh_optimal() { return bh_type(1.0 / 6.0, 2.0 / 3.0); }

MachineSpec MachineSpec::phase_covariant(PhasePlane plane) {
  MachineSpec s;
  s.kind = MachineKind::phase_covariant;
  s.plane = plane;
  return s;
}

MachineSpec MachineSpec::pauli(double p, double q) {
  if (!(p >= 0.0 && q >= 0.0 && p + q > 0.0) || !std::isfinite(p + q)) {
    throw DomainError("Pauli machine needs p, q >= 0 with p + q > 0");
  }
  MachineSpec s;
  s.kind = MachineKind::pauli;
  s.p = p;
  s.q = q;
  return s;
}

MachineSpec MachineSpec::anti_clone() {
  MachineSpec s;
  s.kind = MachineKind::anti_clone;
  return s;
}

std::string MachineSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case MachineKind::wz:
      os << "wz";
      break;
    case MachineKind::bh_type:
      os << "bh(xi=" << xi << ", eta=" << eta << ")";
      break;
    case MachineKind::phase_covariant:
      os << "pc(" << (plane == PhasePlane::equator ? "equator" : "real-circle") << ")";
      break;
    case MachineKind::pauli:
      os << "pauli(p=" << p << ", q=" << q << ")";
      break;
    case MachineKind::anti_clone:
      os << "anti";
      break;
  }
  return os.str();
}

double schwarz_bound(double xi) {
  const double inner = xi * (1.0 - 2.0 * xi);
  return inner > 0.0 ? 2.0 * std::sqrt(inner) : 0.0;
}

GramMatrix bh_gram(double xi, double eta) {
  const double qq = 1.0 - 2.0 * xi;
  const double qy = eta / 2.0;
  // order: Q0, Q1, Y0, Y1
  return GramMatrix(ComplexMatrix(4, 4, {qq, 0.0, 0.0, qy,   //
                                         0.0, qq, qy, 0.0,   //
                                         0.0, qy, xi, 0.0,   //
                                         qy, 0.0, 0.0, xi}));
}

CloningIsometry::CloningIsometry(ComplexMatrix matrix, SubsystemLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (layout_.factors() != 3 || layout_.dim(0) != 2 || layout_.dim(1) != 2) {
    throw DimensionError("cloning isometry layout must be (2, 2, M)");
  }
  if (matrix_.cols() != 2 || matrix_.rows() != layout_.total()) {
    throw DimensionError("cloning isometry must be (4M) x 2");
  }
}

CloningIsometry build_machine(const MachineSpec& spec) {
  switch (spec.kind) {
    case MachineKind::wz:
      return build_wz();
    case MachineKind::bh_type:
      return build_bh(spec.xi, spec.eta);
    case MachineKind::phase_covariant:
      return build_phase_covariant(spec.plane);
    case MachineKind::pauli:
      return build_pauli(spec.p, spec.q);
    case MachineKind::anti_clone:
      return build_anti_clone();
  }
  throw DomainError("unknown machine kind");
}

JointOutput apply(const CloningIsometry& machine, const PureQubit& psi) {
  const auto amp = psi.amplitudes();
  const ComplexMatrix out = machine.matrix() * ComplexMatrix::column(amp);
  const auto v = out.data();
  return JointOutput{DensityOperator(ComplexMatrix::outer(v, v), machine.layout())};
}

Marginals marginals(const JointOutput& joint) {
  const SubsystemLayout& layout = joint.rho.layout();
  if (layout.factors() < 3 || layout.dim(0) != 2 || layout.dim(1) != 2) {
    throw DimensionError("marginals need a (2, 2, M) layout");
  }
  const ComplexMatrix& m = joint.rho.matrix();
  return Marginals{DensityOperator(partial_trace(m, layout, {0})),
                   DensityOperator(partial_trace(m, layout, {1})),
                   DensityOperator(partial_trace(m, layout, {0, 1}),
                                   SubsystemLayout{2, 2})};
}

bool on_phase_circle(const PureQubit& psi, PhasePlane plane) {
  constexpr double tol = 1e-12;
  if (plane == PhasePlane::equator) {
    return std::abs(psi.alpha_sq() - psi.beta_sq()) <= tol;
  }
  return std::abs((std::conj(psi.alpha()) * psi.beta()).imag()) <= tol;
}

MarginalPair closed_form_marginals(const MachineSpec& spec, const PureQubit& psi) {
  const double a2 = psi.alpha_sq();
  const double b2 = psi.beta_sq();
  const cplx ab = psi.alpha() * std::conj(psi.beta());
  switch (spec.kind) {
    case MachineKind::wz: {
      const ComplexMatrix rho(2, 2, {a2, 0.0, 0.0, b2});
      return {DensityOperator(rho), DensityOperator(rho)};
    }
    case MachineKind::bh_type: {
      const double shift = spec.xi * (b2 - a2);
      const ComplexMatrix rho(2, 2, {a2 + shift, spec.eta * ab,
                                     spec.eta * std::conj(ab), b2 - shift});
      return {DensityOperator(rho), DensityOperator(rho)};
    }
    case MachineKind::phase_covariant: {
      if (!on_phase_circle(psi, spec.plane)) {
        throw DomainError("phase-covariant closed form needs an input on the " +
                          std::string(spec.plane == PhasePlane::equator
                                          ? "equator"
                                          : "real great circle"));
      }
      const ComplexMatrix rho = mix_with_orthogonal(psi, kPcMajor, kPcMinor);
      return {DensityOperator(rho), DensityOperator(rho)};
    }
    case MachineKind::pauli: {
      const double p = spec.p, q = spec.q;
      const double n2 = 1.0 / (1.0 + p * p + q * q);
      // Reduces to N^2 [2p |psi><psi| + q^2 I] (and p <-> q) when p + q = 1.
      const ComplexMatrix rho_a(
          2, 2,
          {n2 * (a2 * (1.0 + p * p) + b2 * q * q), n2 * 2.0 * p * ab,
           n2 * 2.0 * p * std::conj(ab), n2 * (b2 * (1.0 + p * p) + a2 * q * q)});
      const ComplexMatrix rho_b(
          2, 2,
          {n2 * (a2 * (1.0 + q * q) + b2 * p * p), n2 * 2.0 * q * ab,
           n2 * 2.0 * q * std::conj(ab), n2 * (b2 * (1.0 + q * q) + a2 * p * p)});
      return {DensityOperator(rho_a), DensityOperator(rho_b)};
    }
    case MachineKind::anti_clone:
      return {shrunk_density(psi, 1.0 / 3.0), shrunk_density(psi, -1.0 / 3.0)};
  }
  throw DomainError("unknown machine kind");
}

FidelityPair machine_fidelities(const MachineSpec& spec, const PureQubit& psi) {
  const Marginals m = marginals(apply(build_machine(spec), psi));
  return {fidelity(psi, m.a), fidelity(psi, m.b)};
}

}  // namespace qclone
