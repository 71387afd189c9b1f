#include "rotlab/fourvec.hpp"

#include <stdexcept>

namespace rotlab {

int AntisymTensor2::slot(int mu, int nu) {
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
  return table[mu][nu];
}

void AntisymTensor2::set(int mu, int nu, double value) {
  if (mu == nu) {
    if (value != 0.0) throw std::invalid_argument("diagonal of antisymmetric tensor must be zero");
    return;
  }
  if (mu < nu)
    m[slot(mu, nu)] = value;
  else
    m[slot(nu, mu)] = -value;
}

AntisymTensor2 wedge(const FourVector& a_cov, const FourVector& b_cov) {
  AntisymTensor2 t;
  int i = 0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) t.m[i++] = a_cov[mu] * b_cov[nu] - a_cov[nu] * b_cov[mu];
  return t;
}

double gramian3(const FourVector& a, const FourVector& b, const FourVector& c) {
  const double aa = dot(a, a), ab = dot(a, b), ac = dot(a, c);
  const double bb = dot(b, b), bc = dot(b, c), cc = dot(c, c);
  return aa * (bb * cc - bc * bc) - ab * (ab * cc - bc * ac) + ac * (ab * bc - bb * ac);
}

namespace {

// Levi-Civita symbol for a permutation of (0,1,2,3); 0 on repeats.
int eps4(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

}  // namespace

FourVector pauli_lubanski(const AntisymTensor2& M, const FourVector& P) {
  const FourVector p_cov = lower(P);
  FourVector w;
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a) {
      if (a == mu) continue;
      for (int b = 0; b < 4; ++b) {
        if (b == mu || b == a) continue;
        for (int g = 0; g < 4; ++g) {
          if (g == mu || g == a || g == b) continue;
          s += eps4(mu, a, b, g) * M(a, b) * p_cov[g];
        }
      }
    }
    w[mu] = -0.5 * s;
  }
  return w;
}

FourVector LorentzTransform::apply(const FourVector& v) const {
  Eigen::Vector4d x(v[0], v[1], v[2], v[3]);
  Eigen::Vector4d y = a * x;
  return {y[0], y[1], y[2], y[3]};
}

LorentzTransform LorentzTransform::then(const LorentzTransform& next) const {
  LorentzTransform t;
  t.a = next.a * a;
  return t;
}

LorentzTransform LorentzTransform::boost(const Eigen::Vector3d& velocity) {
  const double v2 = velocity.squaredNorm();
  if (v2 >= 1.0) throw std::invalid_argument("boost velocity must satisfy |v| < 1");
  LorentzTransform t;
  if (v2 == 0.0) return t;
  const double gamma = 1.0 / std::sqrt(1.0 - v2);
  t.a(0, 0) = gamma;
  for (int i = 0; i < 3; ++i) {
    t.a(0, i + 1) = t.a(i + 1, 0) = -gamma * velocity[i];
    for (int j = 0; j < 3; ++j)
      t.a(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * velocity[i] * velocity[j] / v2;
  }
  return t;
}

LorentzTransform LorentzTransform::rotation(const Eigen::Vector3d& axis, double angle) {
  LorentzTransform t;
  const Eigen::Matrix3d r = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  t.a.block<3, 3>(1, 1) = r;
  return t;
}

}  // namespace rotlab
