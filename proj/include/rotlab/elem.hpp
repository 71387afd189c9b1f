#pragma once

#include <Eigen/Dense>

#include "rotlab/errors.hpp"
#include "rotlab/gauge.hpp"

namespace rotlab {

// The frame vectors whose nine rank-one products, together with the unit
// matrix, close under sums, products, transposition and inversion.
struct ElemFrame {
  Eigen::Vector3d b[3];  // b[0] = N, b[1] = V, b[2] = Omega
  Eigen::Matrix3d gram;

  static ElemFrame from_coords(const GaugeCoords& c);
  double gram_det() const { return gram.determinant(); }
};

// A = id*E + sum_{i,j} coef(i,j) * b_i b_j^T
struct ElemMatrix {
  double id = 0.0;
  Eigen::Matrix3d coef = Eigen::Matrix3d::Zero();

  static ElemMatrix identity();

  ElemMatrix operator+(const ElemMatrix& o) const;
  ElemMatrix operator-(const ElemMatrix& o) const;
  ElemMatrix operator*(double s) const;
  ElemMatrix transpose() const;
};

inline ElemMatrix operator*(double s, const ElemMatrix& a) { return a * s; }

ElemMatrix elem_mul(const ElemMatrix& a, const ElemMatrix& b, const ElemFrame& f);

Eigen::Matrix3d densify(const ElemMatrix& a, const ElemFrame& f);

// Determinant through the bordered 3x3 identity
//   det(E + N X^T + V Y^T + Omega Z^T) = det of the 3x3 matrix of frame
// scalar products.  Throws DecompositionError when the identity coefficient
// vanishes (caller falls back to the dense determinant).
double elem_det(const ElemMatrix& a, const ElemFrame& f);

// Inverse in the basis, found from the linear system for the 10 unknown
// expansion coefficients.  Throws DegenerateFrame when the frame Gramian is
// below 1e-12 and SingularMatrix when no basis inverse exists.
ElemMatrix invert_elem(const ElemMatrix& a, const ElemFrame& f);

}  // namespace rotlab
