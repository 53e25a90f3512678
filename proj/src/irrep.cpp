#include "qdisp/irrep.hpp"

#include <cmath>
#include <sstream>

namespace qdisp {

Irrep build_sl2_irrep(int n, const DeformationParameter& dp) {
  if (n < 0) throw std::invalid_argument("build_sl2_irrep: n must be nonnegative");
  dp.require_quantum("build_sl2_irrep");
  Irrep rep;
  rep.algebra = Algebra::sl2;
  rep.n = n;
  rep.dim = n + 1;
  rep.dp = dp;
  rep.cd = CartanData::make_sl2();
  rep.highest_weight = Weight({Rational(n)});

  Matrix E = Matrix::Zero(rep.dim, rep.dim);
  Matrix K = Matrix::Zero(rep.dim, rep.dim);
  for (int k = 0; k <= n; ++k) {
    K(k, k) = dp.pow_q(Rational(n - 2 * k, 2));
    if (k >= 1) E(k - 1, k) = std::sqrt(q_number(double(k), dp) * q_number(double(n - k + 1), dp));
    rep.weight_of_basis.push_back(Weight({Rational(n - 2 * k)}));
  }
  rep.E.push_back(E);
  rep.F.push_back(E.transpose());
  rep.K.push_back(K);
  return rep;
}

Irrep build_sln_fundamental(int n, const DeformationParameter& dp) {
  if (n < 2) throw std::invalid_argument("build_sln_fundamental: n must be >= 2");
  dp.require_quantum("build_sln_fundamental");
  Irrep rep;
  rep.algebra = Algebra::sln;
  rep.n = n;
  rep.dim = n;
  rep.dp = dp;
  rep.cd = CartanData::make_sln(n);

  // weight of basis vector j (0-based) is eps_{j+1} = omega_{j+1} - omega_j.
  for (int j = 0; j < n; ++j) {
    Weight w = Weight::zero(rep.cd.rank());
    if (j + 1 <= rep.cd.rank()) w.coords[j] = 1;
    if (j >= 1) w.coords[j - 1] -= 1;
    rep.weight_of_basis.push_back(w);
  }
  rep.highest_weight = rep.weight_of_basis[0];

  for (int i = 1; i <= rep.cd.rank(); ++i) {
    Matrix E = Matrix::Zero(n, n);
    E(i - 1, i) = 1.0;
    Matrix K = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
      K(j, j) = dp.pow_q(rep.cd.inner(rep.cd.alpha(i), rep.weight_of_basis[j]) / 2);
    rep.E.push_back(E);
    rep.F.push_back(E.transpose());
    rep.K.push_back(K);
  }
  return rep;
}

Matrix coproduct(const Irrep& rep, Gen g, int i) {
  if (i < 0 || i >= rep.n_simple()) throw std::invalid_argument("coproduct: generator index");
  switch (g) {
    case Gen::E:
      return kron(rep.E[i], rep.K[i]) + kron(diag_inverse(rep.K[i]), rep.E[i]);
    case Gen::F:
      return kron(rep.F[i], rep.K[i]) + kron(diag_inverse(rep.K[i]), rep.F[i]);
    case Gen::K:
      return kron(rep.K[i], rep.K[i]);
  }
  throw std::invalid_argument("coproduct: unknown generator tag");
}

double RelationReport::max_residual() const {
  double m = 0.0;
  for (const auto& [name, r] : residuals) m = std::max(m, r);
  return m;
}

std::string RelationReport::str() const {
  std::ostringstream os;
  for (const auto& [name, r] : residuals) {
    os.setf(std::ios::scientific);
    os.precision(3);
    os << name << ": " << r << "\n";
  }
  return os.str();
}

RelationReport check_relations(const Irrep& rep) {
  RelationReport rr;
  const auto& dp = rep.dp;
  const int s = rep.n_simple();
  auto add = [&](const std::string& name, double v) { rr.residuals.emplace_back(name, v); };
  auto tag = [&](const char* what, int i, int j = -1) {
    std::ostringstream os;
    os << what << "[" << i + 1;
    if (j >= 0) os << "," << j + 1;
    os << "]";
    return os.str();
  };

  for (int i = 0; i < s; ++i) {
    const Matrix Kinv = diag_inverse(rep.K[i]);
    for (int j = 0; j < s; ++j) {
      // K_i X_j K_i^{-1} = q^{±(alpha_i, alpha_j)/2} X_j
      const double a = to_double(rep.cd.inner(rep.cd.alpha(i + 1), rep.cd.alpha(j + 1)));
      add(tag("K E K^-1", i, j),
          (rep.K[i] * rep.E[j] * Kinv - dp.pow_q(a / 2) * rep.E[j]).norm());
      add(tag("K F K^-1", i, j),
          (rep.K[i] * rep.F[j] * Kinv - dp.pow_q(-a / 2) * rep.F[j]).norm());
      // [E_i, F_j] = delta_ij (K_i^2 - K_i^{-2})/(q - q^{-1})
      Matrix comm = rep.E[i] * rep.F[j] - rep.F[j] * rep.E[i];
      if (i == j) comm -= (rep.K[i] * rep.K[i] - Kinv * Kinv) / dp.q_diff();
      add(tag("[E,F]", i, j), comm.norm());
      if (std::abs(i - j) == 1) {
        // quantum Serre relations for adjacent simple roots
        const double q2 = q_number(2.0, dp);
        const Matrix& Ei = rep.E[i];
        const Matrix& Ej = rep.E[j];
        const Matrix& Fi = rep.F[i];
        const Matrix& Fj = rep.F[j];
        add(tag("Serre E", i, j), (Ei * Ei * Ej - q2 * Ei * Ej * Ei + Ej * Ei * Ei).norm());
        add(tag("Serre F", i, j), (Fi * Fi * Fj - q2 * Fi * Fj * Fi + Fj * Fi * Fi).norm());
      } else if (std::abs(i - j) >= 2) {
        add(tag("[E,E] distant", i, j), (rep.E[i] * rep.E[j] - rep.E[j] * rep.E[i]).norm());
        add(tag("[F,F] distant", i, j), (rep.F[i] * rep.F[j] - rep.F[j] * rep.F[i]).norm());
      }
    }
    add(tag("E^dag = F", i), (rep.E[i].adjoint() - rep.F[i]).norm());
    add(tag("K^dag = K", i), (rep.K[i].adjoint() - rep.K[i]).norm());
  }
  return rr;
}

}  // namespace qdisp
