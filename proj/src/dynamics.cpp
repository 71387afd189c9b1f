#include "rotlab/dynamics.hpp"

#include <cmath>

namespace rotlab {

using nlohmann::json;

namespace {

// (dL/dV, dL/dkappa) in the unconstrained chart kvec (k = (|kvec|, kvec),
// kappa = dkvec/dtau); velocities of the holonomic coordinates (rho, kvec).
Vector6 chart_velocity_gradient(const Eigen::Vector3d& kvec, const Eigen::Vector3d& V,
                                const Eigen::Vector3d& kap, const FModel& model) {
  const double nk = kvec.norm();
  GaugeCoords c;
  c.V = V;
  c.N = kvec / nk;
  c.Omega = kap / nk;
  Vector6 g = gauge_velocity_gradient(c, model);
  g.tail<3>() /= nk;
  return g;
}

Eigen::Vector3d chart_k_gradient(const Eigen::Vector3d& kvec, const Eigen::Vector3d& V,
                                 const Eigen::Vector3d& kap, const FModel& model) {
  const double nk = kvec.norm();
  GaugeCoords c;
  c.V = V;
  c.N = kvec / nk;
  c.Omega = kap / nk;
  const Eigen::Vector3d dL_dN = gauge_dL_dN(c, model);
  const Eigen::Vector3d dL_dO = gauge_velocity_gradient(c, model).tail<3>();
  const double dL_dPsi_fixed_kap = -c.Omega.dot(dL_dO);
  return (dL_dN - c.N.dot(dL_dN) * c.N) / nk + dL_dPsi_fixed_kap * c.N / nk;
}

}  // namespace

EomResult eom_accelerations(const GaugeCoords& c, const FModel& model) {
  EomResult out;
  const double p = c.pinv(), q = c.qinv();
  const FJet j = model.jet(p, q);

  // no k-dependence at all: the k sector carries no dynamics
  if (j.Fp == 0.0 && j.Fq == 0.0 && j.Fpp == 0.0 && j.Fpq == 0.0 && j.Fqq == 0.0) {
    out.well_posed = true;
    out.k_sector_decoupled = true;
    out.vdot.setZero();
    out.omegadot = -c.N.dot(c.Omega) * c.Omega;
    return out;
  }

  const Matrix6 H = hessian_dense(hessian_blocks(c, j), ElemFrame::from_coords(c));
  Eigen::SelfAdjointEigenSolver<Matrix6> es(0.5 * (H + H.transpose()));
  const Vector6 ev = es.eigenvalues();
  Eigen::Index imin, imax;
  ev.cwiseAbs().minCoeff(&imin);
  ev.cwiseAbs().maxCoeff(&imax);
  const double cond = std::abs(ev[imin]) > 0.0
                          ? std::abs(ev[imax]) / std::abs(ev[imin])
                          : std::numeric_limits<double>::infinity();

  double scaled = 0;
  const bool singular = hessian_singular(H, &scaled);

  const auto fill_ill = [&] {
    out.well_posed = false;
    out.ill.detH = H.determinant();
    out.ill.scaled_det = scaled;
    out.ill.cond = cond;
    Vector6 dir = es.eigenvectors().col(imin);
    Eigen::Index ibig;
    dir.cwiseAbs().maxCoeff(&ibig);
    if (dir[ibig] < 0) dir = -dir;
    out.ill.null_direction = dir;
    out.ill.reason = singular ? "scaled |det H| below singularity threshold"
                              : "condition number above limit";
  };

  // P-linear shape functions (F_PP = F_PQ = 0) carry the breathing mode as an
  // exact gauge null direction; their dynamics live in the reduced system.
  const bool breathing_gauge = singular && j.Fpp == 0.0 && j.Fpq == 0.0;
  if ((singular || cond > kConditionLimit) && !breathing_gauge) {
    fill_ill();
    return out;
  }

  // chart at Psi = 0: kvec = N, kappa = Omega
  const Eigen::Vector3d kvec = c.N;
  const Eigen::Vector3d kap = c.Omega;

  const double h = 1e-4 * std::max(1.0, kap.norm());
  const auto dirfd = [&](double hh) -> Vector6 {
    return (chart_velocity_gradient(kvec + hh * kap, c.V, kap, model) -
            chart_velocity_gradient(kvec - hh * kap, c.V, kap, model)) /
           (2.0 * hh);
  };
  const Vector6 d1 = dirfd(h);
  const Vector6 d2 = dirfd(0.5 * h);
  const Vector6 convective = (4.0 * d2 - d1) / 3.0;

  Vector6 rhs = -convective;
  rhs.tail<3>() += chart_k_gradient(kvec, c.V, kap, model);

  Vector6 acc;
  if (breathing_gauge) {
    const auto T = breathing_reduction(c.N);
    const Eigen::Matrix<double, 5, 5> R = T.transpose() * H * T;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 5, 5>> es5(0.5 * (R + R.transpose()));
    const auto ev5 = es5.eigenvalues();
    Eigen::Matrix<double, 5, 1> mags = ev5.cwiseAbs();
    std::sort(mags.data(), mags.data() + 5);
    double prod4 = 1.0;
    for (int i = 1; i < 5; ++i) prod4 *= mags[i];
    const double scale5 = std::pow(prod4, 5.0 / 4.0);
    const double cond5 = mags[0] > 0.0 ? mags[4] / mags[0]
                                       : std::numeric_limits<double>::infinity();
    if (std::abs(R.determinant()) <= kSingularityThreshold * scale5 || cond5 > kConditionLimit) {
      fill_ill();
      return out;
    }
    const Eigen::Matrix<double, 5, 1> rhs5 = T.transpose() * rhs;
    const Eigen::Matrix<double, 5, 1> p5 = es5.eigenvectors().transpose() * rhs5;
    const Eigen::Matrix<double, 5, 1> a5 =
        es5.eigenvectors() * (p5.array() / ev5.array()).matrix();
    acc = T * a5;  // breathing acceleration gauged to zero in the chart
    out.breathing_gauge = true;
  } else {
    const Vector6 proj = es.eigenvectors().transpose() * rhs;
    acc = es.eigenvectors() * (proj.array() / ev.array()).matrix();
  }

  out.well_posed = true;
  out.vdot = acc.head<3>();
  out.omegadot = acc.tail<3>() - c.N.dot(c.Omega) * c.Omega;
  return out;
}

namespace {

// Momenta with every kinematical cancellation carried out; identical in
// value to momenta() wherever both are defined, regular at kdot'u = 0.
Momenta momenta_regular(const RotatorState& s, const FModel& model) {
  const auto [p, q] = state_invariants(s);
  const FJet j = model.jet(p, q);
  const double xx = dot(s.xdot, s.xdot);
  const FourVector u = s.xdot * (1.0 / std::sqrt(xx));
  const double ku = dot(s.k, u);
  const double kx = dot(s.k, s.xdot);
  Momenta out;
  out.P = s.m * (j.F - p * j.Fp) * u - s.m * (2.0 * q * j.Fq + p * j.Fp) / ku * s.k +
          (s.m * s.ell * j.Fp / kx) * s.kdot;
  out.Pi = (s.m * s.ell / ku) * j.Fp * u -
           (2.0 * s.m * s.ell * s.ell * std::sqrt(xx) * j.Fq / (kx * kx)) * s.kdot;
  return out;
}

struct OdeState {
  Eigen::Vector3d rho;  // spatial x
  double Psi;
  Eigen::Vector3d N, V, Omega;

  static constexpr int kDim = 13;
  void to_array(double* y) const {
    for (int i = 0; i < 3; ++i) y[i] = rho[i];
    y[3] = Psi;
    for (int i = 0; i < 3; ++i) y[4 + i] = N[i];
    for (int i = 0; i < 3; ++i) y[7 + i] = V[i];
    for (int i = 0; i < 3; ++i) y[10 + i] = Omega[i];
  }
  static OdeState from_array(const double* y) {
    OdeState s;
    for (int i = 0; i < 3; ++i) s.rho[i] = y[i];
    s.Psi = y[3];
    for (int i = 0; i < 3; ++i) s.N[i] = y[4 + i];
    for (int i = 0; i < 3; ++i) s.V[i] = y[7 + i];
    for (int i = 0; i < 3; ++i) s.Omega[i] = y[10 + i];
    return s;
  }
};

}  // namespace

Trajectory integrate(const RotatorState& s0, const FModel& model, const IntegratorConfig& cfg) {
  const GaugeCoords c0 = gauge_coords(s0);
  return integrate(c0, model, cfg, s0.x, s0.m, s0.ell);
}

Trajectory integrate(const GaugeCoords& c0, const FModel& model, const IntegratorConfig& cfg,
                     const FourVector& x0, double m, double ell) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw std::invalid_argument("integrator tolerances must be positive");

  Trajectory traj;

  OdeState st;
  st.rho = x0.spatial();
  st.Psi = c0.Psi;
  st.N = c0.N.normalized();
  st.V = c0.V;
  st.Omega = c0.Omega;

  bool hit_ill = false;
  IllPosedInfo ill;

  // ydot = (ell*V, N.Omega, Omega - (N.Omega)N, vdot, omegadot)
  const auto deriv = [&](const OdeState& s, OdeState* d) -> bool {
    GaugeCoords c;
    c.V = s.V;
    c.N = s.N.normalized();
    c.Omega = s.Omega;
    c.Psi = s.Psi;
    const EomResult r = eom_accelerations(c, model);
    if (!r.well_posed) {
      hit_ill = true;
      ill = r.ill;
      return false;
    }
    const double no = c.N.dot(s.Omega);
    d->rho = ell * s.V;
    d->Psi = no;
    d->N = s.Omega - no * c.N;
    d->V = r.vdot;
    d->Omega = r.omegadot;
    return true;
  };

  const auto record = [&](double tau, const OdeState& s) {
    TrajectorySample smp;
    smp.tau = tau;
    smp.coords.V = s.V;
    smp.coords.N = s.N;
    smp.coords.Omega = s.Omega;
    smp.coords.Psi = s.Psi;
    smp.state = to_state(smp.coords, FourVector(x0[0] + ell * tau, s.rho), m, ell);
    const Momenta mom = momenta_regular(smp.state, model);
    smp.P = mom.P;
    smp.M = wedge(lower(smp.state.x), lower(mom.P)) + wedge(lower(smp.state.k), lower(mom.Pi));
    smp.casimirs.PP = dot(mom.P, mom.P);
    smp.casimirs.WW = -gramian3(mom.P, mom.Pi, smp.state.k);
    smp.kk_residual = dot(smp.state.k, smp.state.k);
    const Matrix6 H = hessian_dense(smp.coords, model);
    smp.detH = H.determinant();
    hessian_singular(H, &smp.scaled_detH);
    traj.samples.push_back(std::move(smp));
  };

  // Dormand-Prince 5(4)
  static const double A[7][6] = {
      {0, 0, 0, 0, 0, 0},
      {1.0 / 5, 0, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
      {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double B[7] = {35.0 / 384,      0, 500.0 / 1113, 125.0 / 192,
                              -2187.0 / 6784, 11.0 / 84, 0};
  static const double E[7] = {71.0 / 57600,       0,          -71.0 / 16695, 71.0 / 1920,
                              -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

  constexpr int n = OdeState::kDim;
  double y[n], k[7][n], ytmp[n], ynew[n], yerr[n];
  st.to_array(y);

  double tau = 0.0;
  double hstep = std::min(cfg.initial_step, cfg.max_step);
  record(tau, st);

  const auto eval = [&](const double* yy, double* kk) -> bool {
    OdeState d;
    if (!deriv(OdeState::from_array(yy), &d)) return false;
    d.to_array(kk);
    return true;
  };

  int consecutive_rejects = 0;
  while (tau < cfg.tau_span) {
    hstep = std::min(hstep, cfg.tau_span - tau);
    if (hstep < 1e-13 * cfg.tau_span) throw StepFailure("step size underflow at tau = " + std::to_string(tau));

    bool ok = eval(y, k[0]);
    for (int s = 1; ok && s < 7; ++s) {
      for (int i = 0; i < n; ++i) {
        double acc = 0;
        for (int jx = 0; jx < s; ++jx) acc += A[s][jx] * k[jx][i];
        ytmp[i] = y[i] + hstep * acc;
      }
      ok = eval(ytmp, k[s]);
    }
    if (!ok) {
      if (hit_ill) break;
      throw StepFailure("derivative evaluation failed");
    }

    double errnorm = 0;
    for (int i = 0; i < n; ++i) {
      double sb = 0, se = 0;
      for (int s = 0; s < 7; ++s) {
        sb += B[s] * k[s][i];
        se += E[s] * k[s][i];
      }
      ynew[i] = y[i] + hstep * sb;
      yerr[i] = hstep * se;
      const double w = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      errnorm += (yerr[i] / w) * (yerr[i] / w);
    }
    errnorm = std::sqrt(errnorm / n);

    if (errnorm <= 1.0) {
      tau += hstep;
      for (int i = 0; i < n; ++i) y[i] = ynew[i];
      OdeState sacc = OdeState::from_array(y);
      sacc.N.normalize();
      sacc.to_array(y);
      record(tau, sacc);
      consecutive_rejects = 0;
    } else if (++consecutive_rejects > 200) {
      throw StepFailure("step control stalled");
    }
    const double fac = std::clamp(0.9 * std::pow(std::max(errnorm, 1e-16), -0.2), 0.2, 5.0);
    hstep = std::min(hstep * fac, cfg.max_step);
  }

  traj.ill_posed = hit_ill;
  if (hit_ill) {
    traj.ill = ill;
    traj.termination = "ill-posed: " + ill.reason;
  } else {
    traj.completed = true;
    traj.termination = "completed";
  }
  return traj;
}

json ConservationReport::to_json() const {
  return {{"max_P_drift", max_P_drift},
          {"max_M_drift", max_M_drift},
          {"max_PP_drift", max_PP_drift},
          {"max_WW_drift", max_WW_drift},
          {"max_kk", max_kk}};
}

std::string trajectory_csv(const Trajectory& t) {
  std::string csv =
      "tau,x0,x1,x2,x3,xdot0,xdot1,xdot2,xdot3,k0,k1,k2,k3,kdot0,kdot1,kdot2,kdot3,"
      "P0,P1,P2,P3,M01,M02,M03,M12,M13,M23,PP,WW,kk,detH\n";
  char buf[1024];
  for (const auto& s : t.samples) {
    int n = std::snprintf(buf, sizeof buf, "%.17g", s.tau);
    const auto put = [&](double v) { n += std::snprintf(buf + n, sizeof buf - n, ",%.17g", v); };
    for (int i = 0; i < 4; ++i) put(s.state.x[i]);
    for (int i = 0; i < 4; ++i) put(s.state.xdot[i]);
    for (int i = 0; i < 4; ++i) put(s.state.k[i]);
    for (int i = 0; i < 4; ++i) put(s.state.kdot[i]);
    for (int i = 0; i < 4; ++i) put(s.P[i]);
    for (int i = 0; i < 6; ++i) put(s.M.m[i]);
    put(s.casimirs.PP);
    put(s.casimirs.WW);
    put(s.kk_residual);
    put(s.detH);
    csv += buf;
    csv += '\n';
  }
  return csv;
}

ConservationReport conservation_report(const Trajectory& t, const FModel&) {
  if (t.samples.empty()) return {};
  const TrajectorySample& first = t.samples.front();

  double pscale = 1e-300, mscale = 1e-300;
  for (int i = 0; i < 4; ++i) pscale = std::max(pscale, std::abs(first.P[i]));
  for (int i = 0; i < 6; ++i) mscale = std::max(mscale, std::abs(first.M.m[i]));
  const double pp0 = first.casimirs.PP, ww0 = first.casimirs.WW;
  const double ppscale = std::max(std::abs(pp0), 1e-300);
  const double wwscale = std::max(std::abs(ww0), 1e-300);

  ConservationReport r;
  for (const auto& s : t.samples) {
    for (int i = 0; i < 4; ++i)
      r.max_P_drift = std::max(r.max_P_drift, std::abs(s.P[i] - first.P[i]) / pscale);
    for (int i = 0; i < 6; ++i)
      r.max_M_drift = std::max(r.max_M_drift, std::abs(s.M.m[i] - first.M.m[i]) /
                                                  std::max(mscale, pscale));
    r.max_PP_drift = std::max(r.max_PP_drift, std::abs(s.casimirs.PP - pp0) / ppscale);
    r.max_WW_drift = std::max(r.max_WW_drift, std::abs(s.casimirs.WW - ww0) / wwscale);
    r.max_kk = std::max(r.max_kk, std::abs(s.kk_residual));
  }
  return r;
}

}  // namespace rotlab
