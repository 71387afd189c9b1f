#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rotlab/fundamental.hpp"
#include "rotlab/hessian.hpp"

using namespace rotlab;
using namespace rotlab::testing;

TEST_CASE("recast: constant F") {
  const FJet j = FModel::constant(1.0).jet(0.3, 0.9);
  const RecastPoint pt = recast_from_jet(j, 0.3, 0.9, +1);
  CHECK(pt.u == 1.0);
  CHECK(pt.ux == 0.0);
  CHECK(pt.uy == 0.0);
  const auto [r1, r2] = pde_residuals(pt);
  CHECK(r1 == 0.0);
  CHECK(r2 == 2.0);  // 2u exactly
}

TEST_CASE("recast: fundamental_sqrt at Q=1, x=+1 gives u=2, ux=1, uy=0") {
  const FModel m = FModel::fundamental_sqrt();
  const FJet j = m.jet(0.0, 1.0);
  const RecastPoint pt = recast_from_jet(j, 0.0, 1.0, +1);
  CHECK(pt.u == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(pt.ux == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(pt.uy == 0.0);
}

TEST_CASE("recast chain rule matches finite differences along x") {
  Rng rng(229);
  const auto zoo = generic_model_zoo();
  for (const FModel& m : zoo) {
    for (int i = 0; i < 30; ++i) {
      const auto [p, q] = random_pq(rng, m, {0.3, 2.5, 1.5});
      if (!m.in_domain(p, q * 1.1) || !m.in_domain(p, q * 0.9)) continue;
      for (const int xsign : {+1, -1}) {
        const RecastPoint pt = recast_from_jet(m.jet(p, q), p, q, xsign);
        const double h = 1e-6 * std::max(1.0, std::abs(pt.x));
        const auto u_of_x = [&](double x) {
          const FJet j = m.jet(p, x * x);
          return j.F * j.F;
        };
        const double fd = (u_of_x(pt.x + h) - u_of_x(pt.x - h)) / (2 * h);
        CHECK(pt.ux == doctest::Approx(fd).epsilon(1e-6));
        // and along y
        const auto u_of_y = [&](double y) {
          const FJet j = m.jet(y, q);
          return j.F * j.F;
        };
        const double fdy = (u_of_y(p + h) - u_of_y(p - h)) / (2 * h);
        CHECK(pt.uy == doctest::Approx(fdy).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("recast rejects Q <= 0 and F = 0") {
  const FJet j = FModel::constant(0.0).jet(0.1, 0.5);
  CHECK_THROWS_AS(recast_from_jet(j, 0.1, 0.5, +1), DomainError);
  const FJet j2 = FModel::constant(1.0).jet(0.1, 0.5);
  CHECK_THROWS_AS(recast_from_jet(j2, 0.1, -0.5, +1), DomainError);
}

// The sign-branch probe: for sqrt-type solutions the residuals vanish only on
// the x-branch opposite to the inner radical sign.
TEST_CASE("branch sensitivity of the recast residuals") {
  const FModel m = FModel::fundamental_sqrt(+1);
  double worst_minus = 0, best_plus = 1e300;
  for (double p = -1.5; p <= 1.51; p += 0.5) {
    for (double q = 0.2; q <= 3.01; q += 0.4) {
      const FJet j = m.jet(p, q);
      const auto [r1m, r2m] = pde_residuals(recast_from_jet(j, p, q, -1));
      worst_minus = std::max({worst_minus, std::abs(r1m), std::abs(r2m)});
      const auto [r1p, r2p] = pde_residuals(recast_from_jet(j, p, q, +1));
      best_plus = std::min(best_plus, std::max(std::abs(r1p), std::abs(r2p)));
    }
  }
  CHECK(worst_minus < 1e-10);
  CHECK(best_plus > 0.1);
}

TEST_CASE("nu-family solution satisfies both equations on its certified branch") {
  const GridSpec grid;
  for (const double nu : {0.0, 1.0, 1.5}) {
    const FModel m = FModel::fundamental_nu(nu, nu != 0.0 ? 1.0 / nu : 0.0);
    const Certification cert = verify_fundamental(m, grid, 1.0, 1.0);
    INFO(m.label());
    REQUIRE(cert.pde_branch_xsign.has_value());
    CHECK(*cert.pde_branch_xsign == -1);
    CHECK(cert.pde_max_r1 < 1e-10);
    CHECK(cert.pde_max_r2 < 1e-10);
    CHECK(cert.points_used >= 500);
  }
}

TEST_CASE("certification of the closed-form solutions at two unit systems") {
  const GridSpec grid;
  const std::vector<FModel> funds = {
      FModel::fundamental_sqrt(+1),
      FModel::fundamental_sqrt(-1),
      FModel::fundamental_nu(1.5, 2.0),
      FModel::fundamental_nu(1.5, 2.0, +1, -1),
      FModel::separable(ScalarFn::sqrt_radical(+1)),
      FModel::separable(ScalarFn::sqrt_radical(-1)),
  };
  for (const FModel& m : funds) {
    for (const auto& [mass, ell] : std::vector<std::pair<double, double>>{{1, 1}, {2, 0.5}}) {
      const Certification cert = verify_fundamental(m, grid, mass, ell);
      INFO(m.label(), " m=", mass, " ell=", ell);
      CHECK(cert.certified);
      CHECK(cert.max_pp_dev < 1e-10);
      CHECK(cert.max_ww_dev < 1e-10);
    }
  }
}

TEST_CASE("free particle and deformed models are not certified") {
  const GridSpec grid;
  const Certification free = verify_fundamental(FModel::constant(1.0), grid, 1.0, 1.0);
  CHECK_FALSE(free.certified);
  CHECK(free.max_pp_dev < 1e-14);  // PP condition holds
  CHECK(free.max_ww_dev > 0.1);    // WW condition fails

  const double eps = 1e-3;
  const Certification def =
      verify_fundamental(FModel::deformed(FModel::fundamental_sqrt(), eps), grid, 1.0, 1.0);
  CHECK_FALSE(def.certified);
  CHECK(def.max_pp_dev > 0.05 * eps);
  CHECK(def.max_pp_dev < 100 * eps);  // deviation is O(eps)
}

TEST_CASE("certification equivalence: fundamental iff certified-branch residuals vanish") {
  const GridSpec grid;
  std::vector<FModel> zoo = {
      FModel::fundamental_sqrt(),
      FModel::fundamental_nu(2.0, 0.5),
      FModel::separable(ScalarFn::sqrt_radical(+1)),
      FModel::constant(1.0),
      FModel::deformed(FModel::fundamental_sqrt(), 1e-3),
      FModel::separable(ScalarFn::affine(1.0, 1.0)),
      generic_model_zoo()[0],
  };
  for (const FModel& m : zoo) {
    const Certification cert = verify_fundamental(m, grid, 1.0, 1.0);
    const bool pde_ok = cert.pde_branch_xsign.has_value();
    INFO(m.label());
    CHECK(cert.certified == pde_ok);
  }
}

TEST_CASE("certified models sit below the Hessian singularity threshold on the grid") {
  const GridSpec grid{-1.5, 1.5, 7, 0.05, 3.0, 7};
  const std::vector<FModel> funds = {FModel::fundamental_sqrt(),
                                     FModel::fundamental_nu(1.0, 1.0)};
  for (const FModel& m : funds) {
    const Certification cert = verify_fundamental(m, grid, 1.0, 1.0);
    REQUIRE(cert.certified);
    for (const auto& [p, q] : cert.grid_used.points()) {
      if (!m.in_domain(p, q)) continue;
      double scaled;
      hessian_singular(hessian_dense(canonical_coords(p, q), m), &scaled);
      CHECK(scaled < kSingularityThreshold);
    }
  }
}

TEST_CASE("nu-independence of the certification report") {
  const GridSpec grid;
  Certification base;
  bool first = true;
  for (const double nu : {-2.0, 0.0, 1.0, 5.0}) {
    const FModel m = FModel::fundamental_nu(nu, 1.0);
    const Certification cert = verify_fundamental(m, grid, 1.0, 1.0);
    CHECK(cert.certified);
    if (first) {
      base = cert;
      first = false;
    } else if (*base.grid_used.points().begin() == *cert.grid_used.points().begin() &&
               base.points_used == cert.points_used) {
      CHECK(cert.max_pp_dev == doctest::Approx(base.max_pp_dev).epsilon(1e-12));
      CHECK(cert.max_ww_dev == doctest::Approx(base.max_ww_dev).epsilon(1e-12));
    }
  }
}

TEST_CASE("grid adapts into the domain for strongly bounded nu") {
  const GridSpec grid;  // default Q in [0.05, 4] lies outside the nu=5 domain
  const FModel m = FModel::fundamental_nu(5.0, 0.2);
  const Certification cert = verify_fundamental(m, grid, 1.0, 1.0);
  CHECK(cert.certified);
  CHECK(cert.grid_used.qmax < 0.05);
  CHECK(cert.points_used >= 1000);
}
