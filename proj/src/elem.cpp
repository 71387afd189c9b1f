#include "rotlab/elem.hpp"

namespace rotlab {

ElemFrame ElemFrame::from_coords(const GaugeCoords& c) {
  ElemFrame f;
  f.b[0] = c.N;
  f.b[1] = c.V;
  f.b[2] = c.Omega;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f.gram(i, j) = f.b[i].dot(f.b[j]);
  return f;
}

ElemMatrix ElemMatrix::identity() {
  ElemMatrix e;
  e.id = 1.0;
  return e;
}

ElemMatrix ElemMatrix::operator+(const ElemMatrix& o) const {
  return {id + o.id, coef + o.coef};
}

ElemMatrix ElemMatrix::operator-(const ElemMatrix& o) const {
  return {id - o.id, coef - o.coef};
}

ElemMatrix ElemMatrix::operator*(double s) const { return {id * s, coef * s}; }

ElemMatrix ElemMatrix::transpose() const { return {id, coef.transpose().eval()}; }

ElemMatrix elem_mul(const ElemMatrix& a, const ElemMatrix& b, const ElemFrame& f) {
  ElemMatrix r;
  r.id = a.id * b.id;
  r.coef = a.id * b.coef + b.id * a.coef + a.coef * f.gram * b.coef;
  return r;
}

Eigen::Matrix3d densify(const ElemMatrix& a, const ElemFrame& f) {
  Eigen::Matrix3d m = a.id * Eigen::Matrix3d::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m += a.coef(i, j) * f.b[i] * f.b[j].transpose();
  return m;
}

double elem_det(const ElemMatrix& a, const ElemFrame& f) {
  const double scale = a.coef.cwiseAbs().maxCoeff();
  if (std::abs(a.id) <= 1e-14 * scale || a.id == 0.0)
    throw DecompositionError("identity coefficient vanishes; bordered identity not applicable");
  const Eigen::Matrix3d inner =
      Eigen::Matrix3d::Identity() + f.gram * a.coef.transpose() / a.id;
  return a.id * a.id * a.id * inner.determinant();
}

ElemMatrix invert_elem(const ElemMatrix& a, const ElemFrame& f) {
  if (std::abs(f.gram_det()) < 1e-12)
    throw DegenerateFrame("frame Gramian below 1e-12; basis representation degenerate");

  const Eigen::Matrix3d gc = f.gram * a.coef;

  // unknowns z = (id', coef'(0,0..2,2) row-major); equations indexed the same way
  const auto solve_with_rhs = [&](double rhs_id, const Eigen::Matrix3d& rhs_c,
                                  ElemMatrix* out) -> bool {
    Eigen::Matrix<double, 10, 10> A = Eigen::Matrix<double, 10, 10>::Zero();
    Eigen::Matrix<double, 10, 1> rhs;
    A(0, 0) = a.id;
    rhs(0) = rhs_id;
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < 3; ++l) {
        const int row = 1 + 3 * i + l;
        A(row, 0) = a.coef(i, l);                       // id' * C_{il}
        for (int j = 0; j < 3; ++j)                     // C'_{ij} (id delta_{jl} + (GC)_{jl})
          A(row, 1 + 3 * i + j) = (j == l ? a.id : 0.0) + gc(j, l);
        rhs(row) = rhs_c(i, l);
      }
    Eigen::Matrix<double, 10, 1> z = A.colPivHouseholderQr().solve(rhs);
    if (!z.allFinite()) return false;
    if ((A * z - rhs).norm() > 1e-8 * (1.0 + z.norm()) * (1.0 + A.norm())) return false;
    out->id = z(0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out->coef(i, j) = z(1 + 3 * i + j);
    return true;
  };

  const auto verify = [&](const ElemMatrix& inv) {
    const Eigen::Matrix3d prod = densify(inv, f) * densify(a, f);
    return (prod - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
           1e-9 * (1.0 + densify(inv, f).norm() * densify(a, f).norm());
  };

  ElemMatrix inv;
  if (solve_with_rhs(1.0, Eigen::Matrix3d::Zero(), &inv) && verify(inv)) return inv;

  // E itself lies in the rank-one span: E = sum (G^-1)_{ij} b_i b_j^T.  Retry
  // against that representation (covers inputs with zero identity part).
  const Eigen::Matrix3d ginv = f.gram.inverse();
  if (solve_with_rhs(0.0, ginv, &inv) && verify(inv)) return inv;

  throw SingularMatrix("no basis inverse: matrix singular in the elementary-matrix algebra");
}

}  // namespace rotlab
