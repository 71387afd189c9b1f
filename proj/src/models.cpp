#include "rotlab/models.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rotlab {

using nlohmann::json;

// ---------------------------------------------------------------- ScalarFn

ScalarFn ScalarFn::constant(double c) {
  ScalarFn s;
  s.kind_ = Kind::Const;
  s.a_ = c;
  return s;
}

ScalarFn ScalarFn::affine(double c0, double c1) {
  ScalarFn s;
  s.kind_ = Kind::Affine;
  s.a_ = c0;
  s.b_ = c1;
  return s;
}

ScalarFn ScalarFn::exp_of(double lambda) {
  ScalarFn s;
  s.kind_ = Kind::Exp;
  s.a_ = lambda;
  return s;
}

ScalarFn ScalarFn::power(double alpha) {
  ScalarFn s;
  s.kind_ = Kind::Power;
  s.a_ = alpha;
  return s;
}

ScalarFn ScalarFn::sqrt_radical(int sign) {
  ScalarFn s;
  s.kind_ = Kind::SqrtRadical;
  s.sign_ = sign >= 0 ? +1 : -1;
  return s;
}

bool ScalarFn::in_domain(double q) const {
  switch (kind_) {
    case Kind::Const:
    case Kind::Affine:
    case Kind::Exp:
      return true;
    case Kind::Power:
      return q > 0.0;
    case Kind::SqrtRadical:
      return q > 0.0 && 1.0 + sign_ * std::sqrt(q) > 0.0;
  }
  return false;
}

ScalarFn::Jet2 ScalarFn::jet(double q) const {
  switch (kind_) {
    case Kind::Const:
      return {a_, 0.0, 0.0};
    case Kind::Affine:
      return {a_ + b_ * q, b_, 0.0};
    case Kind::Exp: {
      const double e = std::exp(a_ * q);
      return {e, a_ * e, a_ * a_ * e};
    }
    case Kind::Power: {
      if (q <= 0.0) throw DomainError("S = Q^alpha needs Q > 0");
      const double s = std::pow(q, a_);
      return {s, a_ * s / q, a_ * (a_ - 1.0) * s / (q * q)};
    }
    case Kind::SqrtRadical: {
      if (q <= 0.0) throw DomainError("S = sqrt(1 + s*sqrt(Q)) needs Q > 0");
      const double x = std::sqrt(q);
      const double r = 1.0 + sign_ * x;
      if (r <= 0.0) {
        std::ostringstream os;
        os << "radicand 1 + (" << sign_ << ")*sqrt(Q) = " << r << " <= 0 at Q = " << q;
        throw DomainError(os.str());
      }
      const double s = std::sqrt(r);
      const double s1 = sign_ / (4.0 * x * s);
      const double s2 = -sign_ / (8.0 * x * x * x * s) - 1.0 / (16.0 * q * r * s);
      return {s, s1, s2};
    }
  }
  throw DomainError("unknown scalar kind");
}

std::string ScalarFn::label() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Const: os << "S=" << a_; break;
    case Kind::Affine: os << "S=" << a_ << "+" << b_ << "*Q"; break;
    case Kind::Exp: os << "S=exp(" << a_ << "*Q)"; break;
    case Kind::Power: os << "S=Q^" << a_; break;
    case Kind::SqrtRadical: os << "S=sqrt(1" << (sign_ > 0 ? "+" : "-") << "sqrt(Q))"; break;
  }
  return os.str();
}

json ScalarFn::to_json() const {
  switch (kind_) {
    case Kind::Const: return {{"kind", "const"}, {"c", a_}};
    case Kind::Affine: return {{"kind", "affine"}, {"c0", a_}, {"c1", b_}};
    case Kind::Exp: return {{"kind", "exp"}, {"lambda", a_}};
    case Kind::Power: return {{"kind", "power"}, {"alpha", a_}};
    case Kind::SqrtRadical: return {{"kind", "sqrt_radical"}, {"sign", sign_}};
  }
  throw DomainError("unknown scalar kind");
}

ScalarFn ScalarFn::from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "const") return constant(j.at("c").get<double>());
  if (kind == "affine") return affine(j.at("c0").get<double>(), j.at("c1").get<double>());
  if (kind == "exp") return exp_of(j.at("lambda").get<double>());
  if (kind == "power") return power(j.at("alpha").get<double>());
  if (kind == "sqrt_radical") return sqrt_radical(j.at("sign").get<int>());
  throw DomainError("unknown scalar function kind: " + kind);
}

std::string to_string(ModelClass c) {
  switch (c) {
    case ModelClass::Separable: return "separable";
    case ModelClass::DegenerateBranch: return "degenerate";
    case ModelClass::Generic: return "generic";
  }
  return "generic";
}

// ---------------------------------------------------------------- FModel

struct FModel::Impl {
  Kind kind = Kind::Constant;
  double c = 1.0;                      // Constant
  double nu = 0.0, a = 0.0;            // FundamentalNu
  int souter = +1, sinner = +1;        // sign selectors
  ScalarFn S = ScalarFn::constant(1);  // Separable
  std::shared_ptr<const FModel> base;  // Deformed
  double eps = 0.0;
  std::vector<std::tuple<int, int, double>> poly;  // Polynomial
  JetFn custom_jet;
  DomainFn custom_domain;
  std::string custom_label;
};

FModel FModel::constant(double c) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Constant;
  impl->c = c;
  return FModel(impl);
}

FModel FModel::fundamental_sqrt(int sign) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::FundamentalSqrt;
  impl->sinner = sign >= 0 ? +1 : -1;
  return FModel(impl);
}

FModel FModel::fundamental_nu(double nu, double a, int souter, int sinner) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::FundamentalNu;
  impl->nu = nu;
  impl->a = a;
  impl->souter = souter >= 0 ? +1 : -1;
  impl->sinner = sinner >= 0 ? +1 : -1;
  return FModel(impl);
}

FModel FModel::separable(ScalarFn S) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Separable;
  impl->S = S;
  return FModel(impl);
}

FModel FModel::deformed(FModel base, double eps) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Deformed;
  impl->base = std::make_shared<const FModel>(std::move(base));
  impl->eps = eps;
  return FModel(impl);
}

FModel FModel::polynomial(std::vector<std::tuple<int, int, double>> terms) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Polynomial;
  impl->poly = std::move(terms);
  return FModel(impl);
}

FModel FModel::custom(JetFn jet, DomainFn domain, std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Custom;
  impl->custom_jet = std::move(jet);
  impl->custom_domain = std::move(domain);
  impl->custom_label = std::move(label);
  return FModel(impl);
}

FModel::Kind FModel::kind() const { return impl_->kind; }
double FModel::nu() const { return impl_->nu; }
double FModel::eps() const { return impl_->eps; }
const FModel& FModel::base() const { return *impl_->base; }

bool FModel::in_domain(double p, double q) const {
  switch (impl_->kind) {
    case Kind::Constant:
    case Kind::Polynomial:
      return true;
    case Kind::FundamentalSqrt:
      return q > 0.0 && 1.0 + impl_->sinner * std::sqrt(q) > 0.0;
    case Kind::FundamentalNu:
      return q > 0.0 && 1.0 + impl_->sinner * std::sqrt(q) - impl_->nu * impl_->nu * q > 0.0;
    case Kind::Separable:
      return q > 0.0 && impl_->S.in_domain(q);
    case Kind::Deformed:
      return impl_->base->in_domain(p, q);
    case Kind::Custom:
      return impl_->custom_domain ? impl_->custom_domain(p, q) : true;
  }
  return false;
}

namespace {

void require_positive_q(double q, const char* who) {
  if (!(q > 0.0)) {
    std::ostringstream os;
    os << who << " needs Q > 0, got Q = " << q;
    throw DomainError(os.str());
  }
}

}  // namespace

FJet FModel::jet(double p, double q) const {
  FJet out;
  switch (impl_->kind) {
    case Kind::Constant:
      out.F = impl_->c;
      return out;

    case Kind::FundamentalSqrt: {
      require_positive_q(q, "fundamental_sqrt");
      const int s = impl_->sinner;
      const double x = std::sqrt(q);
      const double r = 1.0 + s * x;
      if (r <= 0.0) {
        std::ostringstream os;
        os << "radicand 1 + (" << s << ")*sqrt(Q) = " << r << " <= 0 at Q = " << q;
        throw DomainError(os.str());
      }
      const double sr = std::sqrt(r);
      out.F = sr;
      out.Fq = s / (4.0 * x * sr);
      out.Fqq = -s / (8.0 * x * x * x * sr) - 1.0 / (16.0 * q * r * sr);
      return out;
    }

    case Kind::FundamentalNu: {
      require_positive_q(q, "fundamental_nu");
      const double nu = impl_->nu;
      const int si = impl_->sinner, so = impl_->souter;
      const double sq = std::sqrt(q);
      const double R = 1.0 + si * sq - nu * nu * q;
      if (R <= 0.0) {
        std::ostringstream os;
        os << "radicand 1 + (" << si << ")*sqrt(Q) - nu^2 Q = " << R << " <= 0 at Q = " << q;
        throw DomainError(os.str());
      }
      const double sR = std::sqrt(R);
      const double Rq = si / (2.0 * sq) - nu * nu;
      const double Rqq = -si / (4.0 * q * sq);
      out.F = nu * p + so * sR;
      out.Fp = nu;
      out.Fq = so * Rq / (2.0 * sR);
      out.Fqq = so * (Rqq / (2.0 * sR) - Rq * Rq / (4.0 * R * sR));
      return out;
    }

    case Kind::Separable: {
      require_positive_q(q, "separable");
      const ScalarFn::Jet2 s = impl_->S.jet(q);
      const double T = 1.0 + p * p / q;
      const double B = std::sqrt(T);
      const double Bp = (p / q) / B;
      const double Bq = -p * p / (2.0 * q * q * B);
      const double Bpp = 1.0 / (q * B) - (p * p / (q * q)) / (T * B);
      const double Bpq = -p / (q * q * B) + p * p * p / (2.0 * q * q * q * T * B);
      const double Bqq = p * p / (q * q * q * B) - p * p * p * p / (4.0 * q * q * q * q * T * B);
      out.F = B * s.S;
      out.Fp = Bp * s.S;
      out.Fq = Bq * s.S + B * s.S1;
      out.Fpp = Bpp * s.S;
      out.Fpq = Bpq * s.S + Bp * s.S1;
      out.Fqq = Bqq * s.S + 2.0 * Bq * s.S1 + B * s.S2;
      return out;
    }

    case Kind::Deformed: {
      out = impl_->base->jet(p, q);
      out.F += impl_->eps * q;
      out.Fq += impl_->eps;
      return out;
    }

    case Kind::Polynomial: {
      for (const auto& [i, j, c] : impl_->poly) {
        const double pi = i == 0 ? 1.0 : std::pow(p, i);
        const double qj = j == 0 ? 1.0 : std::pow(q, j);
        out.F += c * pi * qj;
        if (i >= 1) out.Fp += c * i * std::pow(p, i - 1) * qj;
        if (j >= 1) out.Fq += c * j * pi * std::pow(q, j - 1);
        if (i >= 2) out.Fpp += c * i * (i - 1) * std::pow(p, i - 2) * qj;
        if (i >= 1 && j >= 1) out.Fpq += c * i * j * std::pow(p, i - 1) * std::pow(q, j - 1);
        if (j >= 2) out.Fqq += c * j * (j - 1) * pi * std::pow(q, j - 2);
      }
      return out;
    }

    case Kind::Custom:
      if (!in_domain(p, q)) throw DomainError("custom model evaluated outside its domain");
      return impl_->custom_jet(p, q);
  }
  throw DomainError("unknown model kind");
}

std::string FModel::label() const {
  std::ostringstream os;
  switch (impl_->kind) {
    case Kind::Constant: os << "F=" << impl_->c; break;
    case Kind::FundamentalSqrt:
      os << "F=sqrt(1" << (impl_->sinner > 0 ? "+" : "-") << "sqrt(Q))";
      break;
    case Kind::FundamentalNu:
      os << "F=" << impl_->nu << "*P" << (impl_->souter > 0 ? "+" : "-") << "sqrt(1"
         << (impl_->sinner > 0 ? "+" : "-") << "sqrt(Q)-nu^2*Q)";
      break;
    case Kind::Separable: os << "F=sqrt(1+P^2/Q)*" << impl_->S.label(); break;
    case Kind::Deformed: os << impl_->base->label() << "+" << impl_->eps << "*Q"; break;
    case Kind::Polynomial: os << "F=poly[" << impl_->poly.size() << "]"; break;
    case Kind::Custom: os << impl_->custom_label; break;
  }
  return os.str();
}

json FModel::to_json() const {
  switch (impl_->kind) {
    case Kind::Constant:
      return {{"kind", "constant"}, {"params", {{"c", impl_->c}}}, {"signs", json::array()}};
    case Kind::FundamentalSqrt:
      return {{"kind", "fundamental_sqrt"}, {"params", json::object()}, {"signs", {impl_->sinner}}};
    case Kind::FundamentalNu:
      return {{"kind", "fundamental_nu"},
              {"params", {{"nu", impl_->nu}, {"a", impl_->a}}},
              {"signs", {impl_->souter, impl_->sinner}}};
    case Kind::Separable:
      return {{"kind", "separable"}, {"params", {{"S", impl_->S.to_json()}}}, {"signs", json::array()}};
    case Kind::Deformed:
      return {{"kind", "deformed"},
              {"params", {{"eps", impl_->eps}, {"base", impl_->base->to_json()}}},
              {"signs", json::array()}};
    case Kind::Polynomial: {
      json coeffs = json::array();
      for (const auto& [i, j, c] : impl_->poly) coeffs.push_back({i, j, c});
      return {{"kind", "polynomial"}, {"params", {{"coeffs", coeffs}}}, {"signs", json::array()}};
    }
    case Kind::Custom:
      throw DomainError("custom models have no JSON form");
  }
  throw DomainError("unknown model kind");
}

FModel FModel::from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.value("params", json::object());
  const std::vector<int> signs = j.value("signs", std::vector<int>{});
  const auto sign_at = [&signs](size_t i) { return i < signs.size() ? signs[i] : +1; };

  if (kind == "constant") return constant(params.value("c", 1.0));
  if (kind == "fundamental_sqrt") return fundamental_sqrt(sign_at(0));
  if (kind == "fundamental_nu")
    return fundamental_nu(params.value("nu", 0.0), params.value("a", 0.0), sign_at(0), sign_at(1));
  if (kind == "separable") return separable(ScalarFn::from_json(params.at("S")));
  if (kind == "deformed")
    return deformed(from_json(params.at("base")), params.at("eps").get<double>());
  if (kind == "polynomial") {
    std::vector<std::tuple<int, int, double>> terms;
    for (const auto& t : params.at("coeffs"))
      terms.emplace_back(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>());
    return polynomial(std::move(terms));
  }
  throw DomainError("unknown model kind: " + kind);
}

// ---------------------------------------------------------------- checks

FdJetReport fd_jet_check(const FModel& model, double p, double q) {
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) *
                   std::max({1.0, std::abs(p), std::abs(q)});
  const FJet j = model.jet(p, q);

  const auto F = [&](double pp, double qq) { return model.jet(pp, qq).F; };
  const auto Fp = [&](double pp, double qq) { return model.jet(pp, qq).Fp; };
  const auto Fq = [&](double pp, double qq) { return model.jet(pp, qq).Fq; };

  FdJetReport r;
  r.dFp = std::abs((F(p + h, q) - F(p - h, q)) / (2 * h) - j.Fp);
  r.dFq = std::abs((F(p, q + h) - F(p, q - h)) / (2 * h) - j.Fq);
  r.dFpp = std::abs((Fp(p + h, q) - Fp(p - h, q)) / (2 * h) - j.Fpp);
  r.dFpq = std::abs(0.5 * ((Fp(p, q + h) - Fp(p, q - h)) / (2 * h) +
                           (Fq(p + h, q) - Fq(p - h, q)) / (2 * h)) -
                    j.Fpq);
  r.dFqq = std::abs((Fq(p, q + h) - Fq(p, q - h)) / (2 * h) - j.Fqq);
  r.max_residual = std::max({r.dFp, r.dFq, r.dFpp, r.dFpq, r.dFqq});
  return r;
}

ModelClass classify(const FModel& model, const std::vector<std::pair<double, double>>& grid) {
  double worst_sep = 0.0, worst_deg = 0.0;
  for (const auto& [p, q] : grid) {
    const FJet j = model.jet(p, q);
    const double scale = std::max(1.0, std::abs(j.F));
    worst_sep = std::max(worst_sep, std::abs(j.Fp * (p * p + q) - p * j.F) / scale);
    worst_deg = std::max(worst_deg, std::abs(j.F - p * j.Fp) / scale);
  }
  constexpr double tol = 1e-10;
  if (worst_sep < tol) return ModelClass::Separable;
  if (worst_deg < tol) return ModelClass::DegenerateBranch;
  return ModelClass::Generic;
}

}  // namespace rotlab
