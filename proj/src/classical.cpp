#include "qdisp/classical.hpp"

#include <cmath>
#include <sstream>

namespace qdisp {

namespace {

void finish_basis(ClassicalBasis& cb) {
  const int d = cb.dim;
  cb.casimir = Matrix::Zero(d, d);
  for (const auto& e : cb.basis) cb.casimir += e * e;
}

}  // namespace

ClassicalBasis build_classical_sl2(int n) {
  if (n < 0) throw std::invalid_argument("build_classical_sl2: n must be nonnegative");
  ClassicalBasis cb;
  cb.algebra = Algebra::sl2;
  cb.n = n;
  cb.dim = n + 1;
  cb.cd = CartanData::make_sl2();
  cb.highest_weight = Weight({Rational(n)});

  Matrix e = Matrix::Zero(cb.dim, cb.dim);
  Matrix h = Matrix::Zero(cb.dim, cb.dim);
  for (int k = 0; k <= n; ++k) {
    h(k, k) = static_cast<double>(n - 2 * k);
    if (k >= 1)
      e(k - 1, k) = std::sqrt(static_cast<double>(k) * (n - k + 1));
  }
  const Matrix f = e.transpose();
  const Complex i_unit(0.0, 1.0);
  cb.basis.push_back(h / std::sqrt(2.0));
  cb.basis.push_back((e + f) / std::sqrt(2.0));
  cb.basis.push_back((e - f) / (i_unit * std::sqrt(2.0)));
  finish_basis(cb);
  return cb;
}

ClassicalBasis build_classical_sln(int n) {
  if (n < 2) throw std::invalid_argument("build_classical_sln: n must be >= 2");
  ClassicalBasis cb;
  cb.algebra = Algebra::sln;
  cb.n = n;
  cb.dim = n;
  cb.cd = CartanData::make_sln(n);
  Weight hw = Weight::zero(cb.cd.rank());
  hw.coords[0] = Rational(1);
  cb.highest_weight = hw;

  const Complex i_unit(0.0, 1.0);
  // Off-diagonal pairs (E_jk + E_kj)/sqrt(2) and (E_jk - E_kj)/(i sqrt 2).
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix sym = Matrix::Zero(n, n);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      cb.basis.push_back(sym / std::sqrt(2.0));
      Matrix asym = Matrix::Zero(n, n);
      asym(j, k) = 1.0;
      asym(k, j) = -1.0;
      cb.basis.push_back(asym / (i_unit * std::sqrt(2.0)));
    }
  }
  // Diagonal (Cartan) part: diag(1,...,1,-k,0,...)/sqrt(k(k+1)).
  for (int k = 1; k < n; ++k) {
    Matrix d = Matrix::Zero(n, n);
    for (int j = 0; j < k; ++j) d(j, j) = 1.0;
    d(k, k) = -static_cast<double>(k);
    cb.basis.push_back(d / std::sqrt(static_cast<double>(k) * (k + 1)));
  }
  finish_basis(cb);
  return cb;
}

Matrix two_site_operator(const ClassicalBasis& cb) {
  const int d = cb.dim;
  const Matrix ident = Matrix::Identity(d, d);
  // D(C) = sum_i (e_i (x) 1 + 1 (x) e_i)^2; subtracting the one-site Casimirs
  // leaves twice the mixed term, hence the factor 1/2.
  Matrix dc = Matrix::Zero(d * d, d * d);
  for (const auto& e : cb.basis) {
    const Matrix lifted = kron(e, ident) + kron(ident, e);
    dc += lifted * lifted;
  }
  return (dc - kron(cb.casimir, ident) - kron(ident, cb.casimir)) / 2.0;
}

ClassicalDispersionReport classical_dispersion(const StateVector& phi,
                                               const ClassicalBasis& cb) {
  if (phi.dim() != cb.dim)
    throw std::invalid_argument(
        "classical_dispersion: state dimension mismatch");
  ClassicalDispersionReport out;

  double sum = 0.0;
  for (const auto& e : cb.basis) {
    const double mean = (phi.v.dot(e * phi.v)).real();
    const double mean_sq = (phi.v.dot(e * (e * phi.v))).real();
    sum += mean_sq - mean * mean;
  }
  out.direct = sum;

  const long d = cb.dim;
  Vector u(d * d);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) u(a * d + b) = phi.v(a) * phi.v(b);
  const Matrix q_op = two_site_operator(cb);
  const double c_mean = (phi.v.dot(cb.casimir * phi.v)).real();
  out.two_site = c_mean - (u.dot(q_op * u)).real();
  return out;
}

double classical_min(const ClassicalBasis& cb) {
  return to_double(cb.cd.inner(cb.cd.rho(), cb.highest_weight) * Rational(2));
}

LimitCheckResult limit_check(const StateVector& phi, Algebra algebra, int n,
                             const std::vector<double>& etas) {
  if (etas.empty()) throw std::invalid_argument("limit_check: empty eta list");
  LimitCheckResult out;
  out.etas = etas;

  const ClassicalBasis cb = (algebra == Algebra::sl2)
                                ? build_classical_sl2(n)
                                : build_classical_sln(n);
  out.classical_value = classical_dispersion(phi, cb).direct;

  for (double eta : etas) {
    const auto dp = DeformationParameter::quantum_eta(eta);
    const Irrep rep = (algebra == Algebra::sl2)
                          ? build_sl2_irrep(n, dp)
                          : build_sln_fundamental(n, dp);
    const RMatrixRep rm = build_r(rep);
    const Decomposition dec = decompose_tensor_square_ladder(rm);
    const double d_eta = delta(phi, rm, dec).delta;
    out.deltas.push_back(d_eta);
    out.errors.push_back(std::abs(d_eta - out.classical_value));
  }

  // Least-squares slope of log(error) against log(eta).
  if (etas.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(etas.size());
    for (size_t i = 0; i < etas.size(); ++i) {
      const double x = std::log(std::abs(etas[i]));
      const double y = std::log(std::max(out.errors[i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return out;
}

}  // namespace qdisp
