// Exception hierarchy for the covhyp library. Every throwing precondition in
// the public API uses one of these types so callers can tell failure modes apart.
#pragma once

#include <stdexcept>

namespace covhyp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A constructor or factory received a parameter outside its contract.
struct InvalidParameter : Error {
  using Error::Error;
};

// A fiber point lies outside the entropy datum domain or the invertible chart.
struct DomainError : Error {
  using Error::Error;
};

// A state lies outside the system validity domain (margin-strict).
struct OutsideValidity : Error {
  using Error::Error;
};

// Frame coefficient C(theta) vanished; velocity and thermo flux are undefined.
struct DegenerateFrame : Error {
  using Error::Error;
};

// The requested velocity has no group parameter (|u| >= c under Lorentz).
struct OutOfRange : Error {
  using Error::Error;
};

// Operation needs an invertible representation flag (eps_tilde^2 == 1).
struct UnsupportedRepresentation : Error {
  using Error::Error;
};

// No projection is shipped for this (eps, eps_tilde) combination.
struct UnsupportedCombination : Error {
  using Error::Error;
};

// Root solve did not meet its residual tolerance within the iteration cap.
struct NoConvergence : Error {
  using Error::Error;
};

// Fiber-to-state Jacobian determinant vanished within tolerance.
struct SingularJacobian : Error {
  using Error::Error;
};

// Flux Jacobian has a negative characteristic discriminant.
struct ComplexEigenvalues : Error {
  using Error::Error;
};

// A cell state left the validity domain during time stepping.
struct StateLeftDomain : Error {
  using Error::Error;
};

// Requested time step exceeds the stable bound.
struct CflViolation : Error {
  using Error::Error;
};

}  // namespace covhyp
