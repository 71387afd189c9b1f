#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

namespace rotlab {

// Contravariant four-vector, metric signature (+,-,-,-).
struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  FourVector() = default;
  FourVector(double c0, double c1, double c2, double c3) : c{c0, c1, c2, c3} {}
  FourVector(double c0, const Eigen::Vector3d& v) : c{c0, v[0], v[1], v[2]} {}

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  Eigen::Vector3d spatial() const { return {c[1], c[2], c[3]}; }

  FourVector operator+(const FourVector& o) const {
    return {c[0] + o[0], c[1] + o[1], c[2] + o[2], c[3] + o[3]};
  }
  FourVector operator-(const FourVector& o) const {
    return {c[0] - o[0], c[1] - o[1], c[2] - o[2], c[3] - o[3]};
  }
  FourVector operator*(double s) const { return {s * c[0], s * c[1], s * c[2], s * c[3]}; }
  FourVector operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
};

inline FourVector operator*(double s, const FourVector& v) { return v * s; }

// Minkowski scalar product.
inline double dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// Lower the index: v_mu = g_{mu nu} v^nu.
inline FourVector lower(const FourVector& v) { return {v[0], -v[1], -v[2], -v[3]}; }

inline double norm_inf(const FourVector& v) {
  return std::max(std::max(std::abs(v[0]), std::abs(v[1])),
                  std::max(std::abs(v[2]), std::abs(v[3])));
}

// Antisymmetric rank-2 tensor with lower indices; six independent components.
struct AntisymTensor2 {
  // order: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
  std::array<double, 6> m{0, 0, 0, 0, 0, 0};

  static int slot(int mu, int nu);  // requires mu < nu

  double operator()(int mu, int nu) const {
    if (mu == nu) return 0.0;
    return mu < nu ? m[slot(mu, nu)] : -m[slot(nu, mu)];
  }
  void set(int mu, int nu, double value);

  AntisymTensor2 operator+(const AntisymTensor2& o) const {
    AntisymTensor2 r;
    for (int i = 0; i < 6; ++i) r.m[i] = m[i] + o.m[i];
    return r;
  }
  AntisymTensor2 operator-(const AntisymTensor2& o) const {
    AntisymTensor2 r;
    for (int i = 0; i < 6; ++i) r.m[i] = m[i] - o.m[i];
    return r;
  }
};

// a_mu b_nu - a_nu b_mu from two covariant four-vectors.
AntisymTensor2 wedge(const FourVector& a_cov, const FourVector& b_cov);

// Determinant of the 3x3 Gramian of Minkowski scalar products of (a, b, c).
double gramian3(const FourVector& a, const FourVector& b, const FourVector& c);

// W^mu = -1/2 eps^{mu alpha beta gamma} M_{alpha beta} P_gamma, eps^{0123} = +1.
// The sign convention is pinned by WW == -gramian3(P, Pi, k).
FourVector pauli_lubanski(const AntisymTensor2& M, const FourVector& P);

// Proper orthochronous Lorentz transform as a 4x4 matrix acting on
// contravariant components.
struct LorentzTransform {
  Eigen::Matrix4d a = Eigen::Matrix4d::Identity();

  FourVector apply(const FourVector& v) const;
  LorentzTransform then(const LorentzTransform& next) const;

  static LorentzTransform boost(const Eigen::Vector3d& velocity);       // |velocity| < 1
  static LorentzTransform rotation(const Eigen::Vector3d& axis, double angle);
};

}  // namespace rotlab
