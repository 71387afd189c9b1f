#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rotlab/fourvec.hpp"
#include "rotlab/observables.hpp"

using namespace rotlab;
using namespace rotlab::testing;

TEST_CASE("minkowski dot") {
  CHECK(dot({1, 0, 0, 0}, {1, 0, 0, 0}) == 1.0);
  CHECK(dot({1, 1, 0, 0}, {1, 1, 0, 0}) == 0.0);
  CHECK(dot({2, 1, 0, 0}, {1, 0, 1, 0}) == 2.0);

  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const FourVector a(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    const FourVector b(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    CHECK(dot(a, b) == doctest::Approx(dot(b, a)).epsilon(1e-14));
  }
}

TEST_CASE("dot invariant under boosts and rotations") {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const FourVector a(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    const FourVector b(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    const LorentzTransform t = random_lorentz(rng);
    const double before = dot(a, b);
    const double after = dot(t.apply(a), t.apply(b));
    CHECK(after == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("gramian3 examples against the dense 3x3 oracle") {
  const auto gram_oracle = [](const FourVector& a, const FourVector& b, const FourVector& c) {
    Eigen::Matrix3d g;
    const FourVector v[3] = {a, b, c};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = dot(v[i], v[j]);
    return det3_oracle(g);
  };

  const FourVector P(1, 0, 0, 0), Pi1(0, 1, 0, 0), Pi2(0, 0, 1, 0);
  const FourVector k1(1, 0, 0, 1), k2(1, 1, 0, 0);

  CHECK(gramian3(P, Pi1, k1) == doctest::Approx(gram_oracle(P, Pi1, k1)).epsilon(1e-14));
  CHECK(gramian3(P, Pi1, k1) == doctest::Approx(1.0));
  CHECK(gramian3(P, P, k1) == 0.0);                 // repeated row
  CHECK(gramian3(P, Pi2, k2) == doctest::Approx(1.0));

  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const FourVector a(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    const FourVector b(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    const FourVector c(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    CHECK(gramian3(a, b, c) == doctest::Approx(gram_oracle(a, b, c)).epsilon(1e-12));
  }
}

TEST_CASE("gramian3 invariant under Lorentz transformation of all arguments") {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const FourVector a(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    const FourVector b(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    const FourVector c(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2),
                       uniform(rng, -2, 2));
    const LorentzTransform t = random_lorentz(rng);
    const double before = gramian3(a, b, c);
    const double after = gramian3(t.apply(a), t.apply(b), t.apply(c));
    CHECK(after == doctest::Approx(before).epsilon(1e-10));
  }
}

TEST_CASE("pauli_lubanski trivial cases") {
  const AntisymTensor2 zero;
  const FourVector P(1.3, 0.2, -0.4, 0.1);
  const FourVector w = pauli_lubanski(zero, P);
  for (int i = 0; i < 4; ++i) CHECK(w[i] == 0.0);

  AntisymTensor2 M;
  M.set(0, 1, 0.7);
  M.set(2, 3, -0.3);
  const FourVector w2 = pauli_lubanski(M, FourVector(0, 0, 0, 0));
  for (int i = 0; i < 4; ++i) CHECK(w2[i] == 0.0);
}

// This identity pins the epsilon-sign convention of the implementation.
TEST_CASE("WW equals -gramian3(P,Pi,k) on 1000 random states and models") {
  Rng rng(31);
  const auto zoo = generic_model_zoo();
  for (int i = 0; i < 1000; ++i) {
    const RotatorState s = random_state(rng);
    const FModel& model = zoo[i % zoo.size()];
    const auto [p, q] = state_invariants(s);
    if (!model.in_domain(p, q)) continue;
    const Momenta mom = momenta(s, model);
    const AntisymTensor2 M = angular_momentum(s, model);
    const FourVector w = pauli_lubanski(M, mom.P);
    const double ww = dot(w, w);
    const double g = -gramian3(mom.P, mom.Pi, s.k);
    CHECK(ww == doctest::Approx(g).epsilon(1e-10));
  }
}
