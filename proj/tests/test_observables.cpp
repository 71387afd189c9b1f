#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rotlab/gauge.hpp"
#include "rotlab/observables.hpp"

using namespace rotlab;
using namespace rotlab::testing;

TEST_CASE("state invariants: transverse kdot") {
  RotatorState s;
  s.x = {0, 0, 0, 0};
  s.xdot = {1, 0, 0, 0};
  s.k = {1, 0, 0, 1};
  const double omega = 0.8;
  s.kdot = {0, omega, 0, 0};
  const auto [p, q] = state_invariants(s);
  CHECK(p == 0.0);
  CHECK(q == doctest::Approx(omega * omega).epsilon(1e-15));
}

TEST_CASE("state invariants: static null vector") {
  RotatorState s;
  s.xdot = {1.3, 0.2, 0.1, 0.0};
  s.k = {1, 0, 0, 1};
  s.kdot = {0, 0, 0, 0};
  const auto [p, q] = state_invariants(s);
  CHECK(p == 0.0);
  CHECK(q == 0.0);
}

TEST_CASE("state invariants: reparametrization invariance") {
  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    RotatorState s = random_state(rng);
    const auto [p0, q0] = state_invariants(s);
    const double lam = uniform(rng, 0.2, 4.0);
    s.xdot = lam * s.xdot;
    s.kdot = lam * s.kdot;
    const auto [p1, q1] = state_invariants(s);
    CHECK(p1 == doctest::Approx(p0).epsilon(1e-13));
    CHECK(q1 == doctest::Approx(q0).epsilon(1e-13));
  }
}

TEST_CASE("state validation errors") {
  RotatorState s;
  s.xdot = {1, 0, 0, 0};
  s.k = {1, 0, 0.3, 1};  // not null
  s.kdot = {0, 0, 0, 0};
  CHECK_THROWS_AS(state_invariants(s), ConstraintViolation);

  s.k = {1, 1, 0, 0};
  s.xdot = {1, 1, 0, 0};  // not timelike
  CHECK_THROWS_AS(state_invariants(s), ConstraintViolation);

  s.xdot = {1, 0, 0, 1.0 - 1e-16};  // k xdot ~ 0 and xdot barely timelike
  s.k = {1, 0, 0, 1};
  CHECK_THROWS_AS(state_invariants(s), ConstraintViolation);
}

TEST_CASE("free particle momenta") {
  Rng rng(59);
  const FModel free = FModel::constant(1.0);
  for (int i = 0; i < 20; ++i) {
    const RotatorState s = random_state(rng, 1.7, 0.9);
    const Momenta mom = momenta(s, free);
    const FourVector u = s.xdot * (1.0 / std::sqrt(dot(s.xdot, s.xdot)));
    for (int c = 0; c < 4; ++c) {
      CHECK(mom.P[c] == doctest::Approx(1.7 * u[c]).epsilon(1e-14));
      CHECK(mom.Pi[c] == 0.0);
    }
  }
}

TEST_CASE("momenta match finite differences of -L") {
  Rng rng(61);
  std::vector<FModel> zoo = generic_model_zoo();
  zoo.push_back(FModel::fundamental_sqrt());
  zoo.push_back(FModel::fundamental_nu(0.7, 0.0));
  int checked = 0;
  for (int i = 0; checked < 150; ++i) {
    const RotatorState s = random_state(rng, 1.2, 0.8);
    const FModel& m = zoo[i % zoo.size()];
    const auto [p, q] = state_invariants(s);
    if (!m.in_domain(p, q)) continue;
    const Momenta got = momenta(s, m);
    const Momenta fd = fd_momenta(s, m);
    for (int c = 0; c < 4; ++c) {
      CHECK(got.P[c] == doctest::Approx(fd.P[c]).epsilon(2e-8));
      CHECK(got.Pi[c] == doctest::Approx(fd.Pi[c]).epsilon(2e-8));
    }
    ++checked;
  }
}

TEST_CASE("Euler homogeneity: P.xdot + Pi.kdot = -L") {
  Rng rng(67);
  const auto zoo = generic_model_zoo();
  for (int i = 0; i < 200; ++i) {
    const RotatorState s = random_state(rng, 1.4, 1.1);
    const FModel& m = zoo[i % zoo.size()];
    const auto [p, q] = state_invariants(s);
    if (!m.in_domain(p, q)) continue;
    const Momenta mom = momenta(s, m);
    const double lhs = dot(mom.P, s.xdot) + dot(mom.Pi, s.kdot);
    CHECK(lhs == doctest::Approx(-lagrangian(s, m)).epsilon(1e-10));
  }
}

TEST_CASE("SingularKinematics when kdot'u = 0 with F_P != 0") {
  RotatorState s;
  s.xdot = {1, 0, 0, 0};  // u = (1,0,0,0); kdot'u = kdot0
  s.k = {1, 0, 0, 1};
  s.kdot = {0, 0.5, 0, 0};  // kdot0 = 0, spatial kdot nonzero
  const FModel with_fp = FModel::polynomial({{0, 0, 1.0}, {1, 0, 0.5}});
  CHECK_THROWS_AS(momenta(s, with_fp), SingularKinematics);
  // F_P == 0: no singular term, fine
  const FModel no_fp = FModel::fundamental_sqrt();
  CHECK_NOTHROW(momenta(s, no_fp));
}

TEST_CASE("angular momentum translation shift") {
  Rng rng(71);
  const auto zoo = generic_model_zoo();
  for (int i = 0; i < 50; ++i) {
    RotatorState s = random_state(rng);
    const FModel& m = zoo[i % zoo.size()];
    const auto [p, q] = state_invariants(s);
    if (!m.in_domain(p, q)) continue;
    const Momenta mom = momenta(s, m);
    const AntisymTensor2 m0 = angular_momentum(s, m);
    const FourVector c(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1),
                       uniform(rng, -1, 1));
    RotatorState st = s;
    st.x = s.x + c;
    const AntisymTensor2 m1 = angular_momentum(st, m);
    const AntisymTensor2 expect = m0 + wedge(lower(c), lower(mom.P));
    for (int slot = 0; slot < 6; ++slot)
      CHECK(m1.m[slot] == doctest::Approx(expect.m[slot]).epsilon(1e-12));
  }
}

TEST_CASE("W orthogonal to P; WW <= 0 on physical states") {
  Rng rng(73);
  const auto zoo = generic_model_zoo();
  for (int i = 0; i < 200; ++i) {
    const RotatorState s = random_state(rng);
    const FModel& m = zoo[i % zoo.size()];
    const auto [p, q] = state_invariants(s);
    if (!m.in_domain(p, q)) continue;
    const Momenta mom = momenta(s, m);
    const FourVector w = pauli_lubanski(angular_momentum(s, m), mom.P);
    const double scale = norm_inf(w) * norm_inf(mom.P) + 1e-300;
    CHECK(std::abs(dot(w, mom.P)) / scale < 1e-11);
    CHECK(dot(w, w) <= 1e-10 * scale * scale);
  }
}

TEST_CASE("casimirs: trivial and fundamental values") {
  const CasimirPair free = casimirs_closed(FModel::constant(1.0), 0.4, 1.2, 1.3, 0.7);
  CHECK(free.PP == doctest::Approx(1.3 * 1.3).epsilon(1e-15));
  CHECK(free.WW == 0.0);

  for (const double m : {1.0, 2.0})
    for (const double ell : {1.0, 0.5}) {
      const CasimirPair c = casimirs_closed(FModel::fundamental_sqrt(), -0.9, 2.7, m, ell);
      CHECK(c.PP == doctest::Approx(m * m).epsilon(1e-12));
      CHECK(c.WW == doctest::Approx(-0.25 * std::pow(m, 4) * ell * ell).epsilon(1e-12));
    }
}

TEST_CASE("separable family closed forms: PP = m^2 S(S-4QS'), WW = -(2 m^2 ell S sqrt(Q) S')^2") {
  const double m = 1.6, ell = 0.8;
  for (const double q : {0.3, 1.1, 2.6}) {
    for (const double p : {-1.0, 0.5}) {
      const ScalarFn S = ScalarFn::affine(1.0, 1.0);
      const CasimirPair c = casimirs_closed(FModel::separable(S), p, q, m, ell);
      const auto sj = S.jet(q);
      const double pp = m * m * sj.S * (sj.S - 4 * q * sj.S1);
      const double ww = -std::pow(2 * m * m * ell * sj.S * std::sqrt(q) * sj.S1, 2);
      CHECK(c.PP == doctest::Approx(pp).epsilon(1e-12));
      CHECK(c.WW == doctest::Approx(ww).epsilon(1e-12));
    }
  }
}

TEST_CASE("nu independence of the Casimirs") {
  Rng rng(79);
  for (const double nu : {-2.0, 0.0, 1.0, 5.0}) {
    const FModel m = FModel::fundamental_nu(nu, 1.0);
    for (int i = 0; i < 25; ++i) {
      const auto [p, q] = random_pq(rng, m, {0.002, 0.04, 2.0});
      const CasimirPair c = casimirs_closed(m, p, q, 1.0, 1.0);
      CHECK(c.PP == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(c.WW == doctest::Approx(-0.25).epsilon(1e-12));
    }
  }
}

TEST_CASE("kinematic equals closed route on 1000 random cases") {
  Rng rng(83);
  const auto zoo = generic_model_zoo();
  int done = 0;
  for (int i = 0; done < 1000; ++i) {
    const RotatorState s = random_state(rng, uniform(rng, 0.7, 2.0), uniform(rng, 0.4, 1.5));
    const FModel& m = zoo[i % zoo.size()];
    const auto [p, q] = state_invariants(s);
    if (!m.in_domain(p, q)) continue;
    const CasimirPair kin = casimirs_kinematic(s, m);
    const CasimirPair cls = casimirs_closed(m, p, q, s.m, s.ell);
    const double sp = std::max({std::abs(kin.PP), std::abs(cls.PP), 1e-12});
    const double sw = std::max({std::abs(kin.WW), std::abs(cls.WW), 1e-12});
    CHECK(std::abs(kin.PP - cls.PP) / sp < 1e-10);
    CHECK(std::abs(kin.WW - cls.WW) / sw < 1e-10);
    ++done;
  }
}

TEST_CASE("Poincare invariance of PP and WW") {
  Rng rng(89);
  const auto zoo = generic_model_zoo();
  int done = 0;
  for (int i = 0; done < 100; ++i) {
    const RotatorState s = random_state(rng);
    const FModel& m = zoo[i % zoo.size()];
    const auto [p, q] = state_invariants(s);
    if (!m.in_domain(p, q)) continue;
    const CasimirPair before = casimirs_kinematic(s, m);
    RotatorState st = transform_state(random_lorentz(rng, 0.6), s);
    st.x = st.x + FourVector(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                             uniform(rng, -2, 2));
    const CasimirPair after = casimirs_kinematic(st, m);
    CHECK(after.PP == doctest::Approx(before.PP).epsilon(1e-10));
    CHECK(after.WW == doctest::Approx(before.WW).epsilon(1e-10));
    ++done;
  }
}

TEST_CASE("constant rescaling of k leaves invariants and Casimirs unchanged") {
  Rng rng(97);
  const auto zoo = generic_model_zoo();
  for (int i = 0; i < 100; ++i) {
    RotatorState s = random_state(rng);
    const FModel& m = zoo[i % zoo.size()];
    const auto [p0, q0] = state_invariants(s);
    if (!m.in_domain(p0, q0)) continue;
    const CasimirPair c0 = casimirs_kinematic(s, m);
    const double c = uniform(rng, 0.2, 5.0);
    s.k = c * s.k;
    s.kdot = c * s.kdot;
    const auto [p1, q1] = state_invariants(s);
    CHECK(p1 == doctest::Approx(p0).epsilon(1e-12));
    CHECK(q1 == doctest::Approx(q0).epsilon(1e-12));
    const CasimirPair c1 = casimirs_kinematic(s, m);
    CHECK(c1.PP == doctest::Approx(c0.PP).epsilon(1e-11));
    CHECK(c1.WW == doctest::Approx(c0.WW).epsilon(1e-11));
  }
}

TEST_CASE("degenerate branch: F = +-P gives WW = m^2 ell^2 PP < 0") {
  Rng rng(101);
  for (const double sign : {1.0, -1.0}) {
    const FModel m = FModel::polynomial({{1, 0, sign}});
    for (int i = 0; i < 30; ++i) {
      const double m0 = uniform(rng, 0.5, 2.0), ell = uniform(rng, 0.5, 2.0);
      const double p = uniform(rng, -2, 2), q = uniform(rng, 0.1, 3.0);
      const CasimirPair c = casimirs_closed(m, p, q, m0, ell);
      CHECK(c.WW == doctest::Approx(m0 * m0 * ell * ell * c.PP).epsilon(1e-12));
      CHECK(c.PP < 0.0);
    }
  }
}

TEST_CASE("route mismatch appears when kdot leaves the null cone tangent") {
  // kdot with k kdot != 0 breaks the closed-form route's premise
  RotatorState s;
  s.xdot = {1.0, 0.1, 0.05, 0.2};
  s.k = {1, 0, 0, 1};
  s.kdot = {0.5, 0.7, 0.1, 0.0};  // k kdot = 0.5
  s.m = 1.0;
  s.ell = 1.0;
  const FModel m = FModel::deformed(FModel::separable(ScalarFn::affine(1, 1)), 0.3);
  const CasimirPair kin = casimirs_kinematic(s, m);
  const auto [p, q] = state_invariants(s);
  const CasimirPair cls = casimirs_closed(m, p, q, s.m, s.ell);
  CHECK(std::abs(kin.PP - cls.PP) / std::abs(cls.PP) > 1e-8);
}
