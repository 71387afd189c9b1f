// Command-line laboratory for breathing-rotator models: invariants, Hessian
// scans, fundamental-condition certification, PDE residuals and constrained
// time evolution.
//
// Exit codes: 0 success, 1 not certified, 2 domain/model error,
// 3 state/constraint error, 4 Casimir route mismatch, 5 ill-posed dynamics.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rotlab/dynamics.hpp"
#include "rotlab/fundamental.hpp"
#include "rotlab/hessian.hpp"
#include "rotlab/scan.hpp"

using namespace rotlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitDomain = 2;
constexpr int kExitConstraint = 3;
constexpr int kExitRouteMismatch = 4;
constexpr int kExitIllPosed = 5;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

FModel load_model(const std::string& path) {
  try {
    return FModel::from_json(read_json_file(path));
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception& e) {
    throw DomainError("model file " + path + ": " + e.what());
  }
}

RotatorState load_state(const std::string& path) {
  try {
    RotatorState s = RotatorState::from_json(read_json_file(path));
    s.validate();
    return s;
  } catch (const ConstraintViolation&) {
    throw;
  } catch (const std::exception& e) {
    throw ConstraintViolation("state file " + path + ": " + e.what());
  }
}

GridSpec parse_grid(const std::string& text) {
  // pmin:pmax:np,qmin:qmax:nq
  GridSpec g;
  if (text.empty()) return g;
  const auto parse_axis = [](const std::string& part, double* lo, double* hi, int* n) {
    std::istringstream is(part);
    std::string a, b, c;
    if (!std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, c))
      throw DomainError("grid axis must be lo:hi:n, got " + part);
    *lo = std::stod(a);
    *hi = std::stod(b);
    *n = std::stoi(c);
    if (*n < 1 || *hi < *lo) throw DomainError("grid bounds must be ordered, n >= 1");
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw DomainError("grid must be paxis,qaxis");
  parse_axis(text.substr(0, comma), &g.pmin, &g.pmax, &g.np);
  parse_axis(text.substr(comma + 1), &g.qmin, &g.qmax, &g.nq);
  return g;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void emit_scan_gnuplot(const std::string& csv_path) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set pm3d map\n"
     << "set xlabel 'P'\nset ylabel 'Q'\n"
     << "set title 'det H (closed form)'\n"
     << "splot '" << csv_path << "' every ::1 using 1:2:5 with points palette pt 5 notitle\n"
     << "pause -1\n";
  write_file(csv_path + ".gp", gp.str());
}

void emit_trajectory_gnuplot(const std::string& csv_path) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set xlabel 'x1'\nset ylabel 'x2'\n"
     << "plot '" << csv_path << "' every ::1 using 3:4 with lines title 'worldline (x1,x2)'\n"
     << "pause -1\n";
  write_file(csv_path + ".gp", gp.str());
}

json vec_json(const FourVector& v) { return json::array({v[0], v[1], v[2], v[3]}); }

int cmd_invariants(const std::string& state_path, const std::string& model_path, double tol) {
  const RotatorState s = load_state(state_path);
  const FModel model = load_model(model_path);
  const auto [p, q] = state_invariants(s);
  const CasimirPair closed = casimirs_closed(model, p, q, s.m, s.ell);
  const CasimirPair kin = casimirs_kinematic(s, model);

  const double dpp = std::abs(closed.PP - kin.PP) / std::max({std::abs(closed.PP), 1.0});
  const double dww = std::abs(closed.WW - kin.WW) / std::max({std::abs(closed.WW), 1.0});

  json out;
  out["P"] = p;
  out["Q"] = q;
  out["PP_closed"] = closed.PP;
  out["WW_closed"] = closed.WW;
  out["PP_kinematic"] = kin.PP;
  out["WW_kinematic"] = kin.WW;
  out["route_rel_diff_PP"] = dpp;
  out["route_rel_diff_WW"] = dww;
  out["routes_agree"] = dpp <= tol && dww <= tol;
  std::cout << out.dump(2) << "\n";
  return (dpp > tol || dww > tol) ? kExitRouteMismatch : kExitOk;
}

int cmd_scan(const std::string& model_path, const GridSpec& grid, const std::string& out_path,
             double mass, double ell, bool gnuplot) {
  const FModel model = load_model(model_path);
  const ScanResult scan = run_scan(model, grid, mass, ell);
  if (scan.rows_in_domain == 0) {
    std::cerr << "scan grid does not intersect the model domain\n";
    return kExitDomain;
  }
  const std::string csv = scan_csv(scan);
  if (out_path.empty())
    std::cout << csv;
  else {
    write_file(out_path, csv);
    if (gnuplot) emit_scan_gnuplot(out_path);
  }
  return kExitOk;
}

int cmd_certify(const std::string& model_path, const GridSpec& grid, double mass, double ell) {
  const FModel model = load_model(model_path);
  const Certification cert = verify_fundamental(model, grid, mass, ell);
  std::cout << cert.to_json().dump(2) << "\n";
  return cert.certified ? kExitOk : kExitNotCertified;
}

int cmd_pde_residuals(const std::string& model_path, const GridSpec& grid, double mass,
                      double ell) {
  const FModel model = load_model(model_path);
  const Certification cert = verify_fundamental(model, grid, mass, ell);
  json out = cert.to_json()["pde_branch"];
  out["certified"] = cert.certified;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_simulate(const std::string& model_path, const std::string& state_path,
                 const IntegratorConfig& cfg, const std::string& out_path, bool gnuplot) {
  const FModel model = load_model(model_path);
  const RotatorState s0 = load_state(state_path);
  Trajectory traj;
  try {
    traj = integrate(s0, model, cfg);
  } catch (const StepFailure& e) {
    std::cerr << "step failure: " << e.what() << "\n";
    return kExitDomain;
  }

  if (!out_path.empty()) {
    write_file(out_path, trajectory_csv(traj));
    if (gnuplot) emit_trajectory_gnuplot(out_path);
  }

  if (traj.ill_posed) {
    json diag;
    diag["ill_posed"] = true;
    diag["tau_reached"] = traj.samples.empty() ? 0.0 : traj.samples.back().tau;
    diag["detH"] = traj.ill.detH;
    diag["scaled_detH"] = traj.ill.scaled_det;
    diag["condition_number"] = traj.ill.cond;
    diag["reason"] = traj.ill.reason;
    json dir = json::array();
    for (int i = 0; i < 6; ++i) dir.push_back(traj.ill.null_direction[i]);
    diag["null_direction"] = dir;
    std::cout << diag.dump(2) << "\n";
    return kExitIllPosed;
  }

  json rep = conservation_report(traj, model).to_json();
  rep["samples"] = traj.samples.size();
  rep["tau_span"] = cfg.tau_span;
  rep["termination"] = traj.termination;
  const auto& last = traj.samples.back();
  rep["final_P"] = vec_json(last.P);
  rep["final_PP"] = last.casimirs.PP;
  rep["final_WW"] = last.casimirs.WW;
  std::cout << rep.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify_eq3(const std::vector<std::string>& model_paths, const std::string& state_path,
                   double tol) {
  if (model_paths.size() < 2) throw DomainError("verify-eq3 needs at least two --model files");
  const RotatorState s = load_state(state_path);
  std::vector<FModel> models;
  for (const auto& mp : model_paths) models.push_back(load_model(mp));

  json out;
  json kappas = json::array();
  try {
    double worst = 0.0;
    std::vector<double> kappa;
    const GaugeCoords c = gauge_coords(s);
    for (const auto& m : models) {
      kappa.push_back(extract_kappa(m, c, s.m, s.ell));
      json e;
      e["model"] = m.label();
      e["kappa"] = kappa.back();
      kappas.push_back(e);
    }
    for (std::size_t i = 0; i < kappa.size(); ++i)
      for (std::size_t jx = i + 1; jx < kappa.size(); ++jx)
        worst = std::max(worst, std::abs(kappa[i] - kappa[jx]) /
                                    std::max({std::abs(kappa[i]), std::abs(kappa[jx]), 1e-300}));
    out["kappas"] = kappas;
    out["max_pairwise_rel_diff"] = worst;
    out["agrees"] = worst < tol;
  } catch (const DegenerateCase& e) {
    out["degenerate"] = true;
    out["reason"] = e.what();
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"breathing-rotator laboratory"};
  app.require_subcommand(1);

  std::string model_path, state_path, out_path, grid_text;
  std::vector<std::string> model_paths;
  double tol = 1e-8, mass = 1.0, ell = 1.0;
  bool gnuplot = false;
  unsigned long long seed = 0;  // reserved for sampling subcommands
  IntegratorConfig cfg;

  auto* inv = app.add_subcommand("invariants", "P, Q and both Casimir routes for a state");
  inv->add_option("--state", state_path)->required();
  inv->add_option("--model", model_path)->required();
  inv->add_option("--tol", tol);

  auto* scan = app.add_subcommand("scan", "grid scan of Casimirs, Hessian determinants, kappa");
  scan->add_option("--model", model_path)->required();
  scan->add_option("--grid", grid_text);
  scan->add_option("--out", out_path);
  scan->add_option("--mass", mass);
  scan->add_option("--ell", ell);
  scan->add_flag("--gnuplot", gnuplot);
  scan->add_option("--seed", seed);

  auto* cert = app.add_subcommand("certify", "fundamental-condition certification");
  cert->add_option("--model", model_path)->required();
  cert->add_option("--grid", grid_text);
  cert->add_option("--mass", mass);
  cert->add_option("--ell", ell);

  auto* pde = app.add_subcommand("pde-residuals", "recast-system residuals per sign branch");
  pde->add_option("--model", model_path)->required();
  pde->add_option("--grid", grid_text);
  pde->add_option("--mass", mass);
  pde->add_option("--ell", ell);

  auto* sim = app.add_subcommand("simulate", "integrate the gauge-fixed equations of motion");
  sim->add_option("--model", model_path)->required();
  sim->add_option("--state", state_path)->required();
  sim->add_option("--out", out_path);
  sim->add_option("--tau-span", cfg.tau_span);
  sim->add_option("--tol", cfg.rel_tol);
  sim->add_option("--abs-tol", cfg.abs_tol);
  sim->add_option("--max-step", cfg.max_step);
  sim->add_flag("--gnuplot", gnuplot);

  auto* eq3 = app.add_subcommand("verify-eq3", "kappa agreement across models at one state");
  eq3->add_option("--model", model_paths)->required()->expected(-2);
  eq3->add_option("--state", state_path)->required();
  eq3->add_option("--tol", tol);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*inv) return cmd_invariants(state_path, model_path, tol);
    if (*scan) return cmd_scan(model_path, parse_grid(grid_text), out_path, mass, ell, gnuplot);
    if (*cert) return cmd_certify(model_path, parse_grid(grid_text), mass, ell);
    if (*pde) return cmd_pde_residuals(model_path, parse_grid(grid_text), mass, ell);
    if (*sim) {
      cfg.abs_tol = std::min(cfg.abs_tol, cfg.rel_tol);
      return cmd_simulate(model_path, state_path, cfg, out_path, gnuplot);
    }
    if (*eq3) return cmd_verify_eq3(model_paths, state_path, tol);
  } catch (const ConstraintViolation& e) {
    std::cerr << "constraint violation: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const SingularKinematics& e) {
    std::cerr << "singular kinematics: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
