#pragma once

#include <string>
#include <vector>

#include "rotlab/fundamental.hpp"
#include "rotlab/hessian.hpp"

namespace rotlab {

// One grid point of a parameter scan at the fixed canonical kinematic frame.
struct ScanRow {
  double p = 0, q = 0;
  double PP = 0, WW = 0;
  double detH_closed = 0, detH_schur = 0, detH_fd = 0;
  double jacobian = 0;
  double kappa = 0;  // NaN where the extraction is degenerate
  bool in_domain = true;
};

struct ScanResult {
  std::vector<ScanRow> rows;  // row-major over the grid
  ModelClass model_class = ModelClass::Generic;
  std::size_t rows_in_domain = 0;
};

// Grid evaluation is spread over threads; rows keep deterministic order.
ScanResult run_scan(const FModel& model, const GridSpec& grid, double m, double ell);

// CSV with header: P,Q,PP,WW,detH_closed,detH_schur,detH_fd,jacobian,kappa,class
std::string scan_csv(const ScanResult& scan);

}  // namespace rotlab
