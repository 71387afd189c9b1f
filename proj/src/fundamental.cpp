#include "rotlab/fundamental.hpp"

#include <algorithm>
#include <cmath>

#include "rotlab/observables.hpp"

namespace rotlab {

using nlohmann::json;

RecastPoint recast_from_jet(const FJet& jet, double p, double q, int xsign) {
  if (!(q > 0.0)) throw DomainError("recast needs Q > 0");
  if (jet.F == 0.0) throw DomainError("recast needs F != 0");
  RecastPoint pt;
  pt.x = (xsign >= 0 ? 1.0 : -1.0) * std::sqrt(q);
  pt.y = p;
  pt.u = jet.F * jet.F;
  pt.ux = 4.0 * pt.x * jet.F * jet.Fq;  // d/dx at fixed y, Q = x^2
  pt.uy = 2.0 * jet.F * jet.Fp;
  return pt;
}

std::pair<double, double> pde_residuals(const RecastPoint& pt) {
  const double r1 = 4.0 * pt.u * pt.u - 4.0 * pt.u * (1.0 + pt.x * pt.ux + pt.y * pt.uy) +
                    2.0 * pt.x * pt.y * pt.ux * pt.uy +
                    (pt.y * pt.y - pt.x * pt.x) * pt.uy * pt.uy;
  const double r2 = 2.0 * pt.u + 2.0 * pt.u * pt.ux - pt.y * pt.ux * pt.uy +
                    pt.x * pt.uy * pt.uy;
  return {r1, r2};
}

std::vector<std::pair<double, double>> GridSpec::points() const {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(np) * nq);
  for (int i = 0; i < np; ++i) {
    const double p = np == 1 ? pmin : pmin + (pmax - pmin) * i / (np - 1);
    for (int j = 0; j < nq; ++j) {
      const double q = nq == 1 ? qmin : qmin + (qmax - qmin) * j / (nq - 1);
      pts.emplace_back(p, q);
    }
  }
  return pts;
}

json Certification::to_json() const {
  json j;
  j["certified"] = certified;
  j["max_pp_dev"] = max_pp_dev;
  j["max_ww_dev"] = max_ww_dev;
  j["tolerance"] = kCertificationTolerance;
  j["grid"] = {{"pmin", grid_used.pmin}, {"pmax", grid_used.pmax}, {"np", grid_used.np},
               {"qmin", grid_used.qmin}, {"qmax", grid_used.qmax}, {"nq", grid_used.nq}};
  j["points_used"] = points_used;
  j["model"] = model_spec;
  j["label"] = model_label;
  json branch;
  branch["xsign"] = pde_branch_xsign ? json(*pde_branch_xsign) : json(nullptr);
  branch["fsign"] = fsign;
  branch["max_r1"] = pde_max_r1;
  branch["max_r2"] = pde_max_r2;
  branch["other_branch_max_residual"] = pde_best_other_branch;
  j["pde_branch"] = branch;
  return j;
}

namespace {

// Largest Q <= qmax with (0, Q) inside the model domain, probed by bisection.
double probe_q_top(const FModel& model, double qmax) {
  if (model.in_domain(0.0, qmax)) return qmax;
  double lo = 0.0, hi = qmax;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    if (model.in_domain(0.0, mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

Certification verify_fundamental(const FModel& model, const GridSpec& grid, double m,
                                 double ell) {
  Certification cert;
  cert.model_label = model.label();
  try {
    cert.model_spec = model.to_json();
  } catch (const DomainError&) {
    cert.model_spec = nullptr;
  }

  GridSpec used = grid;
  auto pts = used.points();
  std::erase_if(pts, [&](const auto& pq) { return !model.in_domain(pq.first, pq.second); });
  if (pts.empty()) {
    const double qtop = probe_q_top(model, grid.qmax);
    if (qtop <= 0.0) throw DomainError("model domain does not intersect the grid");
    used.qmin = qtop * 1e-3;
    used.qmax = qtop * 0.98;
    pts = used.points();
    std::erase_if(pts, [&](const auto& pq) { return !model.in_domain(pq.first, pq.second); });
    if (pts.empty()) throw DomainError("model domain does not intersect the grid");
  }
  cert.grid_used = used;
  cert.points_used = pts.size();

  const double m2 = m * m;
  const double w0 = 0.25 * m2 * m2 * ell * ell;
  double fpos = 0, fneg = 0;
  double worst_r1[2] = {0.0, 0.0};  // per xsign branch {+1, -1}
  double worst_r2[2] = {0.0, 0.0};
  for (const auto& [p, q] : pts) {
    const CasimirPair c = casimirs_closed(model, p, q, m, ell);
    cert.max_pp_dev = std::max(cert.max_pp_dev, std::abs(c.PP - m2) / m2);
    cert.max_ww_dev = std::max(cert.max_ww_dev, std::abs(c.WW + w0) / (m2 * m2 * ell * ell));

    const FJet j = model.jet(p, q);
    (j.F >= 0 ? fpos : fneg) += 1;
    if (j.F != 0.0) {
      for (int bi = 0; bi < 2; ++bi) {
        const int xsign = bi == 0 ? +1 : -1;
        const auto [r1, r2] = pde_residuals(recast_from_jet(j, p, q, xsign));
        worst_r1[bi] = std::max(worst_r1[bi], std::abs(r1));
        worst_r2[bi] = std::max(worst_r2[bi], std::abs(r2));
      }
    }
  }
  cert.fsign = fpos >= fneg ? +1 : -1;

  const double worst[2] = {std::max(worst_r1[0], worst_r2[0]),
                           std::max(worst_r1[1], worst_r2[1])};
  const int best = worst[0] <= worst[1] ? 0 : 1;
  cert.pde_max_r1 = worst_r1[best];
  cert.pde_max_r2 = worst_r2[best];
  cert.pde_best_other_branch = worst[1 - best];
  if (worst[best] < kCertificationTolerance) cert.pde_branch_xsign = best == 0 ? +1 : -1;

  cert.certified = cert.max_pp_dev < kCertificationTolerance &&
                   cert.max_ww_dev < kCertificationTolerance;
  return cert;
}

}  // namespace rotlab
