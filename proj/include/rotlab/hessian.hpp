#pragma once

#include <Eigen/Dense>

#include "rotlab/elem.hpp"
#include "rotlab/gauge.hpp"
#include "rotlab/models.hpp"
#include "rotlab/observables.hpp"

namespace rotlab {

using Matrix6 = Eigen::Matrix<double, 6, 6>;

// The three 3x3 blocks of the gauge-fixed Hessian of L = -sqrt(1-V.V) F(P,Q)
// over the (V, Omega) velocities, in the elementary-matrix basis.
struct HessianBlocks {
  ElemMatrix LVV, LVO, LOO;
};

HessianBlocks hessian_blocks(const GaugeCoords& c, const FJet& jet);

// Full 6x6 [LVV LVO; LVO^T LOO] densified in the frame of c.
Matrix6 hessian_dense(const HessianBlocks& b, const ElemFrame& f);
Matrix6 hessian_dense(const GaugeCoords& c, const FModel& model);

// Finite-difference 6x6 Hessian of the gauge Lagrangian (oracle-grade).
Matrix6 hessian_fd(const GaugeCoords& c, const FModel& model);

// det H via the Schur identity det(LOO) det(LVV - LVO LOO^-1 LVO^T), all in
// the basis algebra.  Throws SingularMatrix when LOO has no basis inverse.
double hessian_det_schur(const HessianBlocks& b, const ElemFrame& f);

// Closed-form det H; the sqrt(Q)-derivatives are chained from F_Q.
double hessian_det_closed(const FJet& jet, const GaugeCoords& c);

// Scale-free magnitude reference: (product of the five largest |eigenvalue|)^(6/5).
double deth_scale(const Matrix6& H);

inline constexpr double kSingularityThreshold = 1e-9;

// |det H| <= 1e-9 * deth_scale declares the Hessian singular.
bool hessian_singular(const Matrix6& H, double* scaled_det = nullptr);

// Signed Jacobian determinant d(PP,WW)/d(P,Q) in closed form.
double jacobian_casimir(const FModel& model, double p, double q, double m = 1.0,
                        double ell = 1.0);

// kappa extraction per Hessian-Jacobian proportionality, from two models at
// the same state.  det H comes from the Schur/dense route, the Jacobian from
// its closed form; their ratio isolates the kinematical factor.
struct KappaReport {
  double kappa_a = 0, kappa_b = 0;
  double rel_diff = 0;
};
KappaReport verify_eq3(const FModel& a, const FModel& b, const RotatorState& s);

double extract_kappa(const FModel& model, const GaugeCoords& c, double m, double ell);

// 6x5 projection excluding the breathing direction (the component of Omega
// along N); columns: V basis then the tangent plane of N.
Eigen::Matrix<double, 6, 5> breathing_reduction(const Eigen::Vector3d& N);

// Determinant of the 5x5 Hessian with the breathing direction (component of
// Omega along N) projected out.
double reduced_hessian_det(const FModel& model, const GaugeCoords& c);
double reduced_deth_scale(const FModel& model, const GaugeCoords& c);

}  // namespace rotlab
