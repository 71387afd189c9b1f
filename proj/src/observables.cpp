#include "rotlab/observables.hpp"

#include <cmath>
#include <sstream>

namespace rotlab {

using nlohmann::json;

void RotatorState::validate() const {
  if (!(m > 0.0) || !(ell > 0.0)) throw ConstraintViolation("m and ell must be positive");
  const double kk = dot(k, k);
  const double k0sq = k[0] * k[0];
  if (std::abs(kk) > 1e-12 * std::max(k0sq, 1e-300))
    throw ConstraintViolation("k is not null: kk = " + std::to_string(kk));
  if (!(dot(xdot, xdot) > 0.0)) throw ConstraintViolation("xdot is not timelike");
  const double kx = dot(k, xdot);
  if (kx == 0.0 || std::abs(kx) < 1e-14 * norm_inf(k) * norm_inf(xdot))
    throw ConstraintViolation("k xdot = 0");
}

json RotatorState::to_json() const {
  const auto arr = [](const FourVector& v) { return json::array({v[0], v[1], v[2], v[3]}); };
  return {{"x", arr(x)}, {"xdot", arr(xdot)}, {"k", arr(k)}, {"kdot", arr(kdot)},
          {"m", m},      {"ell", ell}};
}

RotatorState RotatorState::from_json(const json& j) {
  const auto vec = [&j](const char* name) {
    const auto& a = j.at(name);
    if (!a.is_array() || a.size() != 4)
      throw ConstraintViolation(std::string(name) + " must be a 4-array");
    return FourVector(a[0].get<double>(), a[1].get<double>(), a[2].get<double>(),
                      a[3].get<double>());
  };
  RotatorState s;
  s.x = vec("x");
  s.xdot = vec("xdot");
  s.k = vec("k");
  s.kdot = vec("kdot");
  s.m = j.value("m", 1.0);
  s.ell = j.value("ell", 1.0);
  return s;
}

std::pair<double, double> state_invariants(const RotatorState& s) {
  s.validate();
  const double xx = dot(s.xdot, s.xdot);
  const double kx = dot(s.k, s.xdot);
  const double p = s.ell * dot(s.kdot, s.xdot) / (kx * std::sqrt(xx));
  const double q = -s.ell * s.ell * dot(s.kdot, s.kdot) / (kx * kx);
  return {p, q};
}

double lagrangian(const RotatorState& s, const FModel& model) {
  const auto [p, q] = state_invariants(s);
  return -s.m * std::sqrt(dot(s.xdot, s.xdot)) * model.jet(p, q).F;
}

Momenta momenta(const RotatorState& s, const FModel& model) {
  s.validate();
  const auto [p, q] = state_invariants(s);
  const FJet j = model.jet(p, q);

  const double xx = dot(s.xdot, s.xdot);
  const FourVector u = s.xdot * (1.0 / std::sqrt(xx));
  const double ku = dot(s.k, u);
  const double kdu = dot(s.kdot, u);
  const double kx = dot(s.k, s.xdot);

  Momenta out;
  out.P = s.m * (j.F - p * j.Fp) * u - s.m * (2.0 * q * j.Fq + p * j.Fp) / ku * s.k;
  if (j.Fp != 0.0 && norm_inf(s.kdot) != 0.0) {
    if (std::abs(kdu) < 1e-12 * norm_inf(s.kdot) * norm_inf(u))
      throw SingularKinematics("kdot'u = 0 with F_P != 0: term P F_P kdot/(kdot'u) is singular");
    out.P = out.P + s.m * p * j.Fp / kdu * s.kdot;
  }

  // Pi = (m ell/ku)(F_P u - 2 P F_Q kdot/(u kdot)); the ratio P/(u kdot)
  // equals ell/(k xdot), so the kdot term is evaluated in that form.
  out.Pi = (s.m * s.ell / ku) * j.Fp * u -
           (2.0 * s.m * s.ell * s.ell * std::sqrt(xx) * j.Fq / (kx * kx)) * s.kdot;
  return out;
}

AntisymTensor2 angular_momentum(const RotatorState& s, const FModel& model) {
  const Momenta mom = momenta(s, model);
  return wedge(lower(s.x), lower(mom.P)) + wedge(lower(s.k), lower(mom.Pi));
}

CasimirPair casimirs_closed(const FModel& model, double p, double q, double m, double ell) {
  const FJet j = model.jet(p, q);
  const double G = j.F - p * j.Fp;
  CasimirPair c;
  c.PP = m * m * (G * (G - 4.0 * q * j.Fq) - q * j.Fp * j.Fp);
  const double X = j.Fp * j.Fp + 2.0 * j.Fq * G;
  c.WW = -std::pow(m, 4) * ell * ell * q * X * X;
  return c;
}

CasimirPair casimirs_kinematic(const RotatorState& s, const FModel& model) {
  const Momenta mom = momenta(s, model);
  CasimirPair c;
  c.PP = dot(mom.P, mom.P);
  c.WW = -gramian3(mom.P, mom.Pi, s.k);
  return c;
}

}  // namespace rotlab
