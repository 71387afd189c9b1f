#pragma once

#include <stdexcept>
#include <string>

namespace rotlab {

// Evaluation outside a model's (P,Q) domain (radicand <= 0, Q <= 0 where
// a square root of Q is required, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A state violates kk = 0, xdot timelike, k xdot != 0, or a gauge
// precondition (k0 <= 0, xdot0 <= 0, kdot not tangent).
struct ConstraintViolation : std::runtime_error {
  explicit ConstraintViolation(const std::string& what) : std::runtime_error(what) {}
};

// A kinematical denominator of the momentum formulas vanishes.
struct SingularKinematics : std::runtime_error {
  explicit SingularKinematics(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : std::runtime_error {
  explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

// Gramian of the (N,V,Omega) frame too small for the rank-one basis algebra.
struct DegenerateFrame : std::runtime_error {
  explicit DegenerateFrame(const std::string& what) : std::runtime_error(what) {}
};

// Identity coefficient vanishes; the bordered determinant identity does not apply.
struct DecompositionError : std::runtime_error {
  explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

// 0/0 situation in the Hessian/Jacobian proportionality (separable family).
struct DegenerateCase : std::runtime_error {
  explicit DegenerateCase(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive step control stalled.
struct StepFailure : std::runtime_error {
  explicit StepFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rotlab
