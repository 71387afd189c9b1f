#pragma once

#include <functional>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "rotlab/errors.hpp"

namespace rotlab {

// Value and all partials of F up to second order at a point (P,Q).
struct FJet {
  double F = 0, Fp = 0, Fq = 0, Fpp = 0, Fpq = 0, Fqq = 0;
};

// Scalar shape function S(Q) with two derivatives, for the separable family.
class ScalarFn {
 public:
  enum class Kind { Const, Affine, Exp, Power, SqrtRadical };
  struct Jet2 {
    double S = 0, S1 = 0, S2 = 0;
  };

  static ScalarFn constant(double c);
  static ScalarFn affine(double c0, double c1);      // c0 + c1*Q
  static ScalarFn exp_of(double lambda);             // exp(lambda*Q)
  static ScalarFn power(double alpha);               // Q^alpha
  static ScalarFn sqrt_radical(int sign);            // sqrt(1 + sign*sqrt(Q))

  Jet2 jet(double q) const;  // throws DomainError
  bool in_domain(double q) const;
  Kind kind() const { return kind_; }
  std::string label() const;

  nlohmann::json to_json() const;
  static ScalarFn from_json(const nlohmann::json& j);

 private:
  Kind kind_ = Kind::Const;
  double a_ = 1.0, b_ = 0.0;
  int sign_ = +1;
};

enum class ModelClass { Separable, DegenerateBranch, Generic };

std::string to_string(ModelClass c);

// Immutable Lagrangian shape function F(P,Q) with closed-form second-order jets.
class FModel {
 public:
  enum class Kind { Constant, FundamentalSqrt, FundamentalNu, Separable, Deformed, Polynomial, Custom };

  using JetFn = std::function<FJet(double, double)>;
  using DomainFn = std::function<bool(double, double)>;

  FModel() : FModel(constant(1.0)) {}

  static FModel constant(double c);
  // F = sqrt(1 + sign*sqrt(Q)); spin-carrying free-limit rotator shape.
  static FModel fundamental_sqrt(int sign = +1);
  // F = nu*P + souter*sqrt(1 + sinner*sqrt(Q) - nu^2 Q).  The scale
  // parameter `a` is recorded for reference; the shape depends on nu only.
  static FModel fundamental_nu(double nu, double a = 0.0, int souter = +1, int sinner = +1);
  // F = sqrt(1 + P^2/Q) * S(Q)
  static FModel separable(ScalarFn S);
  // F = base + eps*Q
  static FModel deformed(FModel base, double eps);
  // F = sum c * P^i * Q^j over (i, j, c) terms
  static FModel polynomial(std::vector<std::tuple<int, int, double>> terms);
  static FModel custom(JetFn jet, DomainFn domain, std::string label);

  FJet jet(double p, double q) const;  // throws DomainError
  bool in_domain(double p, double q) const;

  Kind kind() const;
  std::string label() const;
  double nu() const;       // FundamentalNu only
  double eps() const;      // Deformed only
  const FModel& base() const;  // Deformed only

  nlohmann::json to_json() const;  // throws DomainError for Custom
  static FModel from_json(const nlohmann::json& j);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit FModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

inline FJet eval_jet(const FModel& model, double p, double q) { return model.jet(p, q); }

// Max abs difference between closed-form partials and central finite
// differences with step h = cbrt(eps)*max(1,|P|,|Q|).  First-order partials
// are differenced from F; second-order ones from the exact first partials.
struct FdJetReport {
  double max_residual = 0;
  double dFp = 0, dFq = 0, dFpp = 0, dFpq = 0, dFqq = 0;
};
FdJetReport fd_jet_check(const FModel& model, double p, double q);

// Classify on a grid: Separable when Fp*(P^2+Q) - P*F ~ 0, DegenerateBranch
// when F - P*Fp ~ 0, else Generic.  Threshold 1e-10 relative to max(1,|F|).
ModelClass classify(const FModel& model, const std::vector<std::pair<double, double>>& grid);

}  // namespace rotlab
