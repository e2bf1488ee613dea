#pragma once

// The five base 1 -> 2 cloning machines as explicit isometries
//   V : C^2 -> C^2 (mode a) (x) C^2 (mode b) (x) C^M (machine),
// their application to pure inputs, and closed forms for their one-copy
// marginals.

#include <string>

#include "qclone/matrix.hpp"
#include "qclone/state.hpp"

namespace qclone {

enum class MachineKind { wz, bh_type, phase_covariant, pauli, anti_clone };

/// Great circle of the Bloch sphere on which the phase-covariant machine
/// clones every state equally well.
///   equator:     (|0> + e^{i phi}|1>)/sqrt 2. The computational-basis
///                transformation conjugated by exp(-i pi/4 X) on the input
///                and on both copies.
///   real_circle: cos t|0> + sin t|1>, the computational-basis
///                transformation itself.
enum class PhasePlane { equator, real_circle };

struct MachineSpec {
  MachineKind kind = MachineKind::wz;
  double xi = 0.0;   // bh_type: <Y_i|Y_i>
  double eta = 0.0;  // bh_type: 2<Q_1|Y_0> = 2<Q_0|Y_1>
  double p = 0.0;    // pauli
  double q = 0.0;    // pauli
  PhasePlane plane = PhasePlane::equator;  // phase_covariant

  static MachineSpec wz();
  /// Checks 0 <= xi <= 1/2 and eta >= 0; the Schwarz bound on eta is left to
  /// build_machine, which reports it as NotRealizable.
  static MachineSpec bh_type(double xi, double eta);
  /// xi = 1/6, eta = 2/3.
  static MachineSpec bh_optimal();
  static MachineSpec phase_covariant(PhasePlane plane = PhasePlane::equator);
  static MachineSpec pauli(double p, double q);
  static MachineSpec anti_clone();

  std::string describe() const;
};

/// 2 sqrt(xi (1 - 2 xi)), the largest eta a BH-type machine with this xi admits.
double schwarz_bound(double xi);

/// Gram matrix of the BH-type machine states in the order (Q0, Q1, Y0, Y1).
GramMatrix bh_gram(double xi, double eta);

/// Isometry with two columns (images of |0> and |1>) over layout (2, 2, M).
class CloningIsometry {
 public:
  /// Checks shapes only: two columns, rows equal to the layout size, and a
  /// layout of the form (2, 2, M). Isometry is the builder's responsibility.
  CloningIsometry(ComplexMatrix matrix, SubsystemLayout layout);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemLayout& layout() const { return layout_; }
  std::size_t machine_dim() const { return layout_.dim(2); }

 private:
  ComplexMatrix matrix_;
  SubsystemLayout layout_;
};

struct JointOutput {
  DensityOperator rho;  // layout (2, 2, M)
};

struct Marginals {
  DensityOperator a;
  DensityOperator b;
  DensityOperator ab;  // layout (2, 2)
};

struct MarginalPair {
  DensityOperator a;
  DensityOperator b;
};

struct FidelityPair {
  double a;
  double b;
};

/// Throws NotRealizable for a BH-type spec outside the Schwarz bound.
CloningIsometry build_machine(const MachineSpec& spec);

/// V|psi><psi|V^dagger.
JointOutput apply(const CloningIsometry& machine, const PureQubit& psi);

Marginals marginals(const JointOutput& joint);

/// True if psi lies on the circle where the phase-covariant machine is
/// covariant (relative phase 0 or pi for real_circle, |alpha| = |beta| for
/// equator), within 1e-12.
bool on_phase_circle(const PureQubit& psi, PhasePlane plane);

/// One-copy marginals from closed-form expressions, independent of the
/// isometry pipeline. Throws DomainError for a phase-covariant spec with psi
/// off its circle.
MarginalPair closed_form_marginals(const MachineSpec& spec, const PureQubit& psi);

/// Fidelities of both copies against psi, via build_machine + apply +
/// marginals.
FidelityPair machine_fidelities(const MachineSpec& spec, const PureQubit& psi);

}  // namespace qclone
