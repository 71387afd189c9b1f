#include "rotlab/scan.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "rotlab/observables.hpp"

namespace rotlab {

namespace {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

ScanResult run_scan(const FModel& model, const GridSpec& grid, double m, double ell) {
  const auto pts = grid.points();
  ScanResult out;
  out.rows.resize(pts.size());

  parallel_for(pts.size(), [&](std::size_t i) {
    const auto [p, q] = pts[i];
    ScanRow& row = out.rows[i];
    row.p = p;
    row.q = q;
    if (!model.in_domain(p, q)) {
      row.in_domain = false;
      return;
    }
    const GaugeCoords c = canonical_coords(p, q);
    const FJet jet = model.jet(p, q);
    const CasimirPair cas = casimirs_closed(model, p, q, m, ell);
    row.PP = cas.PP;
    row.WW = cas.WW;
    row.detH_closed = hessian_det_closed(jet, c);
    const HessianBlocks blocks = hessian_blocks(c, jet);
    const ElemFrame frame = ElemFrame::from_coords(c);
    try {
      row.detH_schur = hessian_det_schur(blocks, frame);
    } catch (const std::runtime_error&) {
      row.detH_schur = hessian_dense(blocks, frame).determinant();
    }
    row.detH_fd = hessian_fd(c, model).determinant();
    row.jacobian = jacobian_casimir(model, p, q, m, ell);
    try {
      row.kappa = extract_kappa(model, c, m, ell);
    } catch (const DegenerateCase&) {
      row.kappa = std::numeric_limits<double>::quiet_NaN();
    }
  });

  std::vector<std::pair<double, double>> in_domain_pts;
  for (const auto& row : out.rows)
    if (row.in_domain) in_domain_pts.emplace_back(row.p, row.q);
  out.rows_in_domain = in_domain_pts.size();
  if (!in_domain_pts.empty()) out.model_class = classify(model, in_domain_pts);
  return out;
}

std::string scan_csv(const ScanResult& scan) {
  std::string csv = "P,Q,PP,WW,detH_closed,detH_schur,detH_fd,jacobian,kappa,class\n";
  const std::string cls = to_string(scan.model_class);
  char buf[512];
  for (const auto& r : scan.rows) {
    if (!r.in_domain) continue;
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", r.p, r.q,
                  r.PP, r.WW, r.detH_closed, r.detH_schur, r.detH_fd, r.jacobian, r.kappa,
                  cls.c_str());
    csv += buf;
  }
  return csv;
}

}  // namespace rotlab
