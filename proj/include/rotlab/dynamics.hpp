#pragma once

#include <string>
#include <vector>

#include "rotlab/gauge.hpp"
#include "rotlab/hessian.hpp"
#include "rotlab/models.hpp"
#include "rotlab/observables.hpp"

namespace rotlab {

// Degenerate-Hessian diagnosis; a first-class result, not an exception.
struct IllPosedInfo {
  double detH = 0;
  double scaled_det = 0;
  double cond = 0;
  Vector6 null_direction = Vector6::Zero();  // (V, Omega) components
  std::string reason;
};

struct EomResult {
  bool well_posed = false;
  bool k_sector_decoupled = false;  // F has no k-dependence; Omega held constant
  bool breathing_gauge = false;     // breathing mode is a gauge direction; reduced solve
  Eigen::Vector3d vdot = Eigen::Vector3d::Zero();
  Eigen::Vector3d omegadot = Eigen::Vector3d::Zero();
  IllPosedInfo ill;
};

inline constexpr double kConditionLimit = 1e12;

// Accelerations from H * (vdot, omegadot-chart) = rhs in the lab-time gauge.
// The Hessian comes from the closed-form blocks; the coordinate partials are
// exact, and the convective term uses a Richardson-extrapolated directional
// difference of the exact velocity gradient.
EomResult eom_accelerations(const GaugeCoords& c, const FModel& model);

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.5;
  double tau_span = 10.0;
  double initial_step = 1e-3;
};

struct TrajectorySample {
  double tau = 0;
  GaugeCoords coords;
  RotatorState state;
  FourVector P;
  AntisymTensor2 M;
  CasimirPair casimirs;
  double kk_residual = 0;
  double detH = 0;
  double scaled_detH = 0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool completed = false;
  bool ill_posed = false;
  IllPosedInfo ill;
  std::string termination;
};

// Adaptive embedded-pair integration of the gauge-fixed equations of motion.
// N is renormalized after every accepted step; terminates with diagnosis when
// the Hessian degenerates mid-flight.  Throws StepFailure when step control
// stalls and IllPosed is not the cause.
Trajectory integrate(const RotatorState& s0, const FModel& model, const IntegratorConfig& cfg);
Trajectory integrate(const GaugeCoords& c0, const FModel& model, const IntegratorConfig& cfg,
                     const FourVector& x0 = FourVector(), double m = 1.0, double ell = 1.0);

struct ConservationReport {
  double max_P_drift = 0;    // relative to the initial P scale
  double max_M_drift = 0;
  double max_PP_drift = 0;
  double max_WW_drift = 0;
  double max_kk = 0;
  nlohmann::json to_json() const;
};

ConservationReport conservation_report(const Trajectory& t, const FModel& model);

// CSV columns: tau, x0..x3, xdot0..xdot3, k0..k3, kdot0..kdot3, P0..P3,
// M01,M02,M03,M12,M13,M23, PP, WW, kk, detH
std::string trajectory_csv(const Trajectory& t);

}  // namespace rotlab
