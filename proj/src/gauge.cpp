#include "rotlab/gauge.hpp"

#include <cmath>

namespace rotlab {

GaugeCoords gauge_coords(const RotatorState& s) {
  s.validate();
  if (!(s.xdot[0] > 0.0)) throw ConstraintViolation("x0 gauge needs xdot0 > 0");
  if (!(s.k[0] > 0.0)) throw ConstraintViolation("k0 must be positive");
  const double kkdot = dot(s.k, s.kdot);
  const double scale = std::max(norm_inf(s.k) * norm_inf(s.kdot), 1e-300);
  if (std::abs(kkdot) > 1e-10 * scale)
    throw ConstraintViolation("kdot is not tangent to the null cone: k kdot = " +
                              std::to_string(kkdot));

  GaugeCoords c;
  c.V = s.xdot.spatial() / s.xdot[0];
  c.Psi = std::log(s.k[0]);
  c.N = s.k.spatial() / s.k[0];
  // dk/dtau = kdot * (dlambda/dtau), dtau/dlambda = xdot0/ell
  const double dl_dtau = s.ell / s.xdot[0];
  c.Omega = dl_dtau * s.kdot.spatial() / s.k[0];
  return c;
}

RotatorState to_state(const GaugeCoords& c, const FourVector& x, double m, double ell) {
  RotatorState s;
  s.x = x;
  s.xdot = FourVector(ell, ell * c.V);
  const double ep = std::exp(c.Psi);
  s.k = FourVector(ep, ep * c.N);
  s.kdot = FourVector(ep * c.N.dot(c.Omega), ep * c.Omega);
  s.m = m;
  s.ell = ell;
  return s;
}

GaugeCoords canonical_coords(double p, double q, const Eigen::Vector3d& V,
                             const Eigen::Vector3d& N) {
  if (!(q >= 0.0)) throw DomainError("canonical frame needs Q >= 0");
  GaugeCoords c;
  c.V = V;
  c.N = N.normalized();
  const double gamma = c.gamma();
  const double nv = c.N.dot(c.V);
  Eigen::Vector3d e = c.V - nv * c.N;
  if (e.norm() < 1e-12) throw DegenerateFrame("canonical frame needs V not parallel to N");
  e.normalize();
  const Eigen::Vector3d f = c.N.cross(e);
  c.Omega = (p / gamma) * c.N + std::sqrt(q) * (1.0 - nv) * f;
  return c;
}

GaugeCoords canonical_coords(double p, double q) {
  static const Eigen::Vector3d V0(0.24, -0.16, 0.10);
  static const Eigen::Vector3d N0 = Eigen::Vector3d(0.20, 0.50, 0.84).normalized();
  return canonical_coords(p, q, V0, N0);
}

double gauge_lagrangian(const GaugeCoords& c, const FModel& model) {
  const FJet j = model.jet(c.pinv(), c.qinv());
  return -std::sqrt(1.0 - c.V.dot(c.V)) * j.F;
}

Vector6 gauge_velocity_gradient(const GaugeCoords& c, const FModel& model) {
  const double p = c.pinv(), q = c.qinv();
  const FJet j = model.jet(p, q);
  const double gamma = c.gamma(), chi = c.chi();
  const double NO = c.N.dot(c.Omega);

  const Eigen::Vector3d dp_dV = p * (gamma * gamma * c.V + chi * c.N) - gamma * chi * c.Omega;
  const Eigen::Vector3d dq_dV = 2.0 * chi * q * c.N;
  const Eigen::Vector3d dp_dO = gamma * chi * (c.N - c.V);
  const Eigen::Vector3d dq_dO = 2.0 * chi * chi * (c.Omega - NO * c.N);

  Vector6 g;
  g.head<3>() = gamma * j.F * c.V - (1.0 / gamma) * (j.Fp * dp_dV + j.Fq * dq_dV);
  g.tail<3>() = -(1.0 / gamma) * (j.Fp * dp_dO + j.Fq * dq_dO);
  return g;
}

Eigen::Vector3d gauge_dL_dN(const GaugeCoords& c, const FModel& model) {
  const double p = c.pinv(), q = c.qinv();
  const FJet j = model.jet(p, q);
  const double gamma = c.gamma(), chi = c.chi();
  const double NO = c.N.dot(c.Omega);
  const Eigen::Vector3d dp_dN = chi * p * c.V + gamma * chi * c.Omega;
  const Eigen::Vector3d dq_dN = 2.0 * chi * q * c.V - 2.0 * chi * chi * NO * c.Omega;
  return -(1.0 / gamma) * (j.Fp * dp_dN + j.Fq * dq_dN);
}

}  // namespace rotlab
