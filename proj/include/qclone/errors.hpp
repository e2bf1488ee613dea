#pragma once

#include <stdexcept>
#include <string>

namespace qclone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or subsystem layouts that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A Gram matrix with an eigenvalue below -tol: no vectors realize it.
class NotRealizable : public Error {
 public:
  using Error::Error;
};

/// Zero state vector, or a matrix that is not a density operator.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Machine parameters violate the fidelity-universality constraint.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// No shrinking-factor pair satisfies the constraint inside the Schwarz bounds.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// xi == xi' in the universality condition.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// lambda == 0 in the state-dependent optimum.
class DivisionDomain : public Error {
 public:
  using Error::Error;
};

/// A required parameter was not supplied.
class MissingParameter : public Error {
 public:
  using Error::Error;
};

}  // namespace qclone
