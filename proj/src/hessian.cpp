#include "rotlab/hessian.hpp"

#include <cmath>
#include <limits>

namespace rotlab {

HessianBlocks hessian_blocks(const GaugeCoords& c, const FJet& j) {
  const double p = c.pinv(), q = c.qinv();
  const double g = c.gamma(), x = c.chi(), z = c.zeta();
  const double pz = p + z;
  const double A1 = j.Fp + p * j.Fpp + 2.0 * q * j.Fpq;
  const double A2 = p * j.Fpq - j.Fq;
  const double A3 = p * j.Fpq + 2.0 * (j.Fq + q * j.Fqq);

  HessianBlocks b;

  ElemMatrix& vv = b.LVV;
  vv.id = (j.F - p * j.Fp) * g;
  vv.coef(1, 1) = g * g * g * (j.F - p * (j.Fp + p * j.Fpp));
  vv.coef(2, 2) = -g * x * x * j.Fpp;
  vv.coef(0, 0) = -(x * x / g) * (p * (2.0 * j.Fp + p * j.Fpp) +
                                  2.0 * q * (3.0 * j.Fq + 2.0 * (p * j.Fpq + q * j.Fqq)));
  vv.coef(0, 1) = vv.coef(1, 0) = -g * x * (p * p * j.Fpp + 2.0 * q * A2);
  vv.coef(0, 2) = vv.coef(2, 0) = x * x * A1;
  vv.coef(1, 2) = vv.coef(2, 1) = g * g * x * p * j.Fpp;

  ElemMatrix& vo = b.LVO;
  vo.id = x * j.Fp;
  vo.coef(2, 2) = 2.0 * x * x * x * j.Fpq;
  vo.coef(1, 1) = g * g * x * p * j.Fpp;
  vo.coef(0, 0) = (x * x / (g * g)) * (2.0 * pz * A3 - g * g * A1);
  vo.coef(0, 1) = x * x * A1;
  vo.coef(0, 2) = -(2.0 * x * x * x / g) * A3;
  vo.coef(1, 0) = x * (2.0 * pz * A2 - g * g * p * j.Fpp);
  vo.coef(2, 1) = -g * x * x * j.Fpp;
  vo.coef(1, 2) = -2.0 * g * x * x * A2;
  vo.coef(2, 0) = (x * x / g) * (g * g * j.Fpp - 2.0 * pz * j.Fpq);

  ElemMatrix& oo = b.LOO;
  oo.id = -2.0 * x * x * j.Fq / g;
  oo.coef(1, 1) = -g * x * x * j.Fpp;
  oo.coef(2, 2) = -4.0 * x * x * x * x * j.Fqq / g;
  oo.coef(0, 0) = (x * x / (g * g * g)) *
                  (g * g * (2.0 * j.Fq + 4.0 * pz * j.Fpq - g * g * j.Fpp) -
                   4.0 * pz * pz * j.Fqq);
  oo.coef(0, 1) = oo.coef(1, 0) = (x * x / g) * (g * g * j.Fpp - 2.0 * pz * j.Fpq);
  oo.coef(1, 2) = oo.coef(2, 1) = 2.0 * x * x * x * j.Fpq;
  oo.coef(0, 2) = oo.coef(2, 0) = (2.0 * x * x * x / (g * g)) * (2.0 * pz * j.Fqq - g * g * j.Fpq);

  return b;
}

Matrix6 hessian_dense(const HessianBlocks& b, const ElemFrame& f) {
  Matrix6 h;
  const Eigen::Matrix3d vv = densify(b.LVV, f);
  const Eigen::Matrix3d vo = densify(b.LVO, f);
  const Eigen::Matrix3d oo = densify(b.LOO, f);
  h.topLeftCorner<3, 3>() = vv;
  h.topRightCorner<3, 3>() = vo;
  h.bottomLeftCorner<3, 3>() = vo.transpose();
  h.bottomRightCorner<3, 3>() = oo;
  return h;
}

Matrix6 hessian_dense(const GaugeCoords& c, const FModel& model) {
  const FJet j = model.jet(c.pinv(), c.qinv());
  return hessian_dense(hessian_blocks(c, j), ElemFrame::from_coords(c));
}

Matrix6 hessian_fd(const GaugeCoords& c, const FModel& model) {
  const double h0 = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  const auto lag = [&](const Vector6& z) {
    GaugeCoords cc = c;
    cc.V = z.head<3>();
    cc.Omega = z.tail<3>();
    return gauge_lagrangian(cc, model);
  };
  Vector6 z0;
  z0 << c.V, c.Omega;
  Vector6 step;
  for (int i = 0; i < 6; ++i) step[i] = h0 * std::max(1.0, std::abs(z0[i]));

  Matrix6 H;
  const double L0 = lag(z0);
  for (int i = 0; i < 6; ++i) {
    Vector6 zp = z0, zm = z0;
    zp[i] += step[i];
    zm[i] -= step[i];
    H(i, i) = (lag(zp) - 2.0 * L0 + lag(zm)) / (step[i] * step[i]);
    for (int jx = i + 1; jx < 6; ++jx) {
      Vector6 zpp = z0, zpm = z0, zmp = z0, zmm = z0;
      zpp[i] += step[i]; zpp[jx] += step[jx];
      zpm[i] += step[i]; zpm[jx] -= step[jx];
      zmp[i] -= step[i]; zmp[jx] += step[jx];
      zmm[i] -= step[i]; zmm[jx] -= step[jx];
      H(i, jx) = H(jx, i) =
          (lag(zpp) - lag(zpm) - lag(zmp) + lag(zmm)) / (4.0 * step[i] * step[jx]);
    }
  }
  return H;
}

namespace {

double det_or_dense(const ElemMatrix& a, const ElemFrame& f) {
  try {
    return elem_det(a, f);
  } catch (const DecompositionError&) {
    return densify(a, f).determinant();
  }
}

}  // namespace

double hessian_det_schur(const HessianBlocks& b, const ElemFrame& f) {
  const ElemMatrix inv = invert_elem(b.LOO, f);  // throws when LOO singular
  const ElemMatrix cross = elem_mul(elem_mul(b.LVO, inv, f), b.LVO.transpose(), f);
  const ElemMatrix schur = b.LVV - cross;
  return det_or_dense(b.LOO, f) * det_or_dense(schur, f);
}

double hessian_det_closed(const FJet& j, const GaugeCoords& c) {
  const double p = c.pinv(), q = c.qinv();
  const double g = c.gamma(), x = c.chi();
  const double G = j.F - p * j.Fp;
  const double X = j.Fp * j.Fp + 2.0 * j.Fq * G;
  const double bracket = (j.Fp * j.Fp + 4.0 * q * j.Fq * j.Fq) * j.Fpp +
                         G * (j.Fpp * (2.0 * j.Fq + 4.0 * q * j.Fqq) - 4.0 * q * j.Fpq * j.Fpq);
  const double x2 = x * x, g2 = g * g;
  return -G * X * x2 * x2 * g2 * g2 * bracket;
}

double deth_scale(const Matrix6& H) {
  const Matrix6 sym = 0.5 * (H + H.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix6> es(sym);
  Eigen::Matrix<double, 6, 1> mags = es.eigenvalues().cwiseAbs();
  std::sort(mags.data(), mags.data() + 6);
  double prod = 1.0;
  for (int i = 1; i < 6; ++i) prod *= mags[i];  // drop the smallest
  return std::pow(prod, 6.0 / 5.0);
}

bool hessian_singular(const Matrix6& H, double* scaled_det) {
  const double scale = deth_scale(H);
  const double det = H.determinant();
  const double scaled = scale > 0.0 ? std::abs(det) / scale
                                    : (det == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  if (scaled_det) *scaled_det = scaled;
  return scaled < kSingularityThreshold;
}

double jacobian_casimir(const FModel& model, double p, double q, double m, double ell) {
  const FJet j = model.jet(p, q);
  const double G = j.F - p * j.Fp;
  const double D = j.Fp * (p * p + q) - p * j.F;
  const double X = j.Fp * j.Fp + 2.0 * j.Fq * G;
  const double bracket = (j.Fp * j.Fp + 4.0 * q * j.Fq * j.Fq) * j.Fpp +
                         G * (j.Fpp * (2.0 * j.Fq + 4.0 * q * j.Fqq) - 4.0 * q * j.Fpq * j.Fpq);
  return -2.0 * std::pow(m, 6) * ell * ell * D * X * bracket;
}

double extract_kappa(const FModel& model, const GaugeCoords& c, double m, double ell) {
  const double p = c.pinv(), q = c.qinv();
  const FJet j = model.jet(p, q);
  const double G = j.F - p * j.Fp;
  const double D = j.Fp * (p * p + q) - p * j.F;

  const double sG = std::abs(j.F) + std::abs(p * j.Fp) + 1e-300;
  const double sD = std::abs(j.Fp) * (p * p + q) + std::abs(p * j.F) + 1e-300;
  if (std::abs(D) < 1e-10 * sD)
    throw DegenerateCase("F_P(P^2+Q) - P F = 0: Hessian/Jacobian ratio is 0/0 (separable)");
  if (std::abs(G) < 1e-10 * sG) throw DegenerateCase("F - P F_P = 0: degenerate branch");

  const double jac = jacobian_casimir(model, p, q, m, ell);
  const double sX = j.Fp * j.Fp + 2.0 * std::abs(j.Fq) * sG + 1e-300;
  const double sB = (j.Fp * j.Fp + 4.0 * q * j.Fq * j.Fq) * std::abs(j.Fpp) +
                    sG * (std::abs(j.Fpp) * (2.0 * std::abs(j.Fq) + 4.0 * q * std::abs(j.Fqq)) +
                          4.0 * q * j.Fpq * j.Fpq) +
                    1e-300;
  const double jac_scale = 2.0 * std::pow(m, 6) * ell * ell * sD * sX * sB;
  if (std::abs(jac) <= 1e-12 * jac_scale)
    throw DegenerateCase("Casimir Jacobian vanishes at this point");

  const HessianBlocks b = hessian_blocks(c, j);
  const ElemFrame f = ElemFrame::from_coords(c);
  double det;
  try {
    det = hessian_det_schur(b, f);
  } catch (const SingularMatrix&) {
    det = hessian_dense(b, f).determinant();
  } catch (const DegenerateFrame&) {
    det = hessian_dense(b, f).determinant();
  }
  return det * D / (G * jac);
}

KappaReport verify_eq3(const FModel& a, const FModel& b, const RotatorState& s) {
  const GaugeCoords c = gauge_coords(s);
  KappaReport r;
  r.kappa_a = extract_kappa(a, c, s.m, s.ell);
  r.kappa_b = extract_kappa(b, c, s.m, s.ell);
  r.rel_diff = std::abs(r.kappa_a - r.kappa_b) /
               std::max(std::max(std::abs(r.kappa_a), std::abs(r.kappa_b)), 1e-300);
  return r;
}

Eigen::Matrix<double, 6, 5> breathing_reduction(const Eigen::Vector3d& N) {
  Eigen::Vector3d seed = Eigen::Vector3d::UnitX();
  if (std::abs(N.x()) > 0.9) seed = Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (seed - seed.dot(N) * N).normalized();
  const Eigen::Vector3d e2 = N.cross(e1);
  Eigen::Matrix<double, 6, 5> T = Eigen::Matrix<double, 6, 5>::Zero();
  T.topLeftCorner<3, 3>() = Eigen::Matrix3d::Identity();
  T.block<3, 1>(3, 3) = e1;
  T.block<3, 1>(3, 4) = e2;
  return T;
}

double reduced_hessian_det(const FModel& model, const GaugeCoords& c) {
  const Matrix6 H = hessian_dense(c, model);
  const auto T = breathing_reduction(c.N);
  return (T.transpose() * H * T).determinant();
}

double reduced_deth_scale(const FModel& model, const GaugeCoords& c) {
  const Matrix6 H = hessian_dense(c, model);
  const auto T = breathing_reduction(c.N);
  const Eigen::Matrix<double, 5, 5> R = T.transpose() * H * T;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 5, 5>> es(0.5 * (R + R.transpose()));
  Eigen::Matrix<double, 5, 1> mags = es.eigenvalues().cwiseAbs();
  std::sort(mags.data(), mags.data() + 5);
  double prod = 1.0;
  for (int i = 1; i < 5; ++i) prod *= mags[i];
  return std::pow(prod, 5.0 / 4.0);
}

}  // namespace rotlab
