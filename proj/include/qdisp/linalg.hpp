#pragma once
#include <Eigen/Dense>

#include <algorithm>

namespace qdisp {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Kronecker product, basis convention e_a (x) e_b  <->  flat index a*dim_b + b.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Flip operator P(e_a (x) e_b) = e_b (x) e_a on V (x) V, dim(V) = d.
inline Matrix flip_operator(int d) {
  Matrix p = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) p(b * d + a, a * d + b) = 1.0;
  return p;
}

// Frobenius-norm residual of lhs == rhs, relative to max(1, ||lhs||, ||rhs||).
inline double rel_residual(const Matrix& lhs, const Matrix& rhs) {
  double scale = std::max({1.0, lhs.norm(), rhs.norm()});
  return (lhs - rhs).norm() / scale;
}

// Flip applied to a length-d^2 product-space vector: out_{(b,a)} = u_{(a,b)}.
inline Vector flip_vector(const Vector& u, long d) {
  Vector out(d * d);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) out(b * d + a) = u(a * d + b);
  return out;
}

inline Matrix diag_inverse(const Matrix& d) {
  Matrix inv = Matrix::Zero(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i) inv(i, i) = 1.0 / d(i, i);
  return inv;
}

}  // namespace qdisp
