#pragma once

#include <utility>

#include <json.hpp>

#include "rotlab/fourvec.hpp"
#include "rotlab/models.hpp"

namespace rotlab {

// Worldline point with its null vector: (x, xdot, k, kdot) plus the two
// dimensional parameters.  Constraints: kk = 0, xdot xdot > 0, k xdot != 0.
struct RotatorState {
  FourVector x, xdot, k, kdot;
  double m = 1.0;
  double ell = 1.0;

  // Throws ConstraintViolation when an invariant fails.
  void validate() const;

  nlohmann::json to_json() const;
  static RotatorState from_json(const nlohmann::json& j);
};

struct CasimirPair {
  double PP = 0;  // mass^2
  double WW = 0;  // mass^4 length^2
};

// The two dimensionless invariants of the action:
//   P = ell*(kdot xdot)/((k xdot) sqrt(xdot xdot)),  Q = -ell^2 (kdot kdot)/(k xdot)^2.
std::pair<double, double> state_invariants(const RotatorState& s);

// Full Lagrangian  L = -m sqrt(xdot xdot) F(P,Q)  in the state's own
// parametrization.
double lagrangian(const RotatorState& s, const FModel& model);

// Momenta canonically conjugate to x and k (contravariant components).
// Throws SingularKinematics when kdot'u vanishes while the matching
// F-derivative does not.
struct Momenta {
  FourVector P, Pi;
};
Momenta momenta(const RotatorState& s, const FModel& model);

// M_{mu nu} = x_mu P_nu - x_nu P_mu + k_mu Pi_nu - k_nu Pi_mu (lower indices).
AntisymTensor2 angular_momentum(const RotatorState& s, const FModel& model);

// PP and WW from the closed forms in (P,Q).
CasimirPair casimirs_closed(const FModel& model, double p, double q, double m, double ell);

// PP = P.P and WW = -gramian3(P, Pi, k) computed from the state.
CasimirPair casimirs_kinematic(const RotatorState& s, const FModel& model);

}  // namespace rotlab
