#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rotlab/models.hpp"

namespace rotlab {

// Point of the recast first-order system in x = +-sqrt(Q), y = P, u = F^2.
struct RecastPoint {
  double x = 0, y = 0;
  double u = 0, ux = 0, uy = 0;
};

// Chain-rule transport of a jet to the recast variables; xsign picks the
// branch x = xsign*sqrt(Q).  Requires Q > 0 and F != 0.
RecastPoint recast_from_jet(const FJet& jet, double p, double q, int xsign);

// Left-hand sides of the two recast equations, exactly as displayed:
//   r1 = 4u^2 - 4u(1 + x ux + y uy) + 2xy ux uy + (y^2 - x^2) uy^2
//   r2 = 2u + 2u ux - y ux uy + x uy^2
std::pair<double, double> pde_residuals(const RecastPoint& pt);

struct GridSpec {
  double pmin = -2.0, pmax = 2.0;
  int np = 50;
  double qmin = 0.05, qmax = 4.0;
  int nq = 50;

  std::vector<std::pair<double, double>> points() const;
};

// Certification that a model satisfies both fundamental conditions on a grid:
// max |PP - m^2|/m^2 and |WW + m^4 ell^2/4|/(m^4 ell^2) below 1e-10.  The grid
// is intersected with the model domain; when that intersection is empty the
// Q-interval is shrunk into the empirically probed domain.
struct Certification {
  bool certified = false;
  double max_pp_dev = 0;
  double max_ww_dev = 0;
  GridSpec grid_used;
  std::size_t points_used = 0;

  // branch bookkeeping from the recast system
  std::optional<int> pde_branch_xsign;  // branch with vanishing residuals, if any
  int fsign = +1;                       // sign of F observed on the grid
  double pde_max_r1 = 0, pde_max_r2 = 0;       // on the certified branch
  double pde_best_other_branch = 0;            // max residual of the other branch

  std::string model_label;
  nlohmann::json model_spec;  // null for custom models

  nlohmann::json to_json() const;
};

inline constexpr double kCertificationTolerance = 1e-10;

Certification verify_fundamental(const FModel& model, const GridSpec& grid, double m,
                                 double ell);

}  // namespace rotlab
