#pragma once

#include <Eigen/Dense>

#include "rotlab/models.hpp"
#include "rotlab/observables.hpp"

namespace rotlab {

using Vector6 = Eigen::Matrix<double, 6, 1>;

// Lab-time gauge coordinates: xdot = ell*[1, V], k = exp(Psi)*[1, N] with
// |N| = 1, kdot = exp(Psi)*[N.Omega, Omega].
struct GaugeCoords {
  Eigen::Vector3d V = Eigen::Vector3d::Zero();
  Eigen::Vector3d N = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d Omega = Eigen::Vector3d::Zero();
  double Psi = 0.0;

  double gamma() const { return 1.0 / std::sqrt(1.0 - V.dot(V)); }
  double chi() const { return 1.0 / (1.0 - N.dot(V)); }
  double zeta() const { return gamma() * chi() * V.dot(Omega); }

  double pinv() const { return gamma() * chi() * (N.dot(Omega) - V.dot(Omega)); }
  double qinv() const {
    const double c = chi();
    return c * c * (Omega.dot(Omega) - std::pow(N.dot(Omega), 2));
  }
};

// Extract gauge coordinates from a state.  Requires xdot0 > 0, k0 > 0 and
// kdot tangent to the null cone (k kdot = 0); throws ConstraintViolation.
GaugeCoords gauge_coords(const RotatorState& s);

// Rebuild the state the coordinates describe, in the tau-parametrization.
RotatorState to_state(const GaugeCoords& c, const FourVector& x, double m, double ell);

// A fixed, generic, well-conditioned frame realizing the requested (P,Q).
GaugeCoords canonical_coords(double p, double q);
GaugeCoords canonical_coords(double p, double q, const Eigen::Vector3d& V,
                             const Eigen::Vector3d& N);

// Dimensionless gauge Lagrangian  L = -sqrt(1 - V.V) * F(P,Q).
double gauge_lagrangian(const GaugeCoords& c, const FModel& model);

// Exact gradient of the gauge Lagrangian w.r.t. the six velocities (V, Omega).
Vector6 gauge_velocity_gradient(const GaugeCoords& c, const FModel& model);

// Exact partials w.r.t. the direction N (at fixed V, Omega) and the
// log-amplitude Psi at fixed kappa = exp(Psi)*Omega.
Eigen::Vector3d gauge_dL_dN(const GaugeCoords& c, const FModel& model);

}  // namespace rotlab
