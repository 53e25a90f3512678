#include "qdisp/rmatrix.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace qdisp {

namespace {

Matrix matrix_power(const Matrix& x, long m) {
  Matrix acc = Matrix::Identity(x.rows(), x.cols());
  for (long i = 0; i < m; ++i) acc = acc * x;
  return acc;
}

double q_factorial(long m, const DeformationParameter& dp) {
  double acc = 1.0;
  for (long k = 1; k <= m; ++k) acc *= q_number(static_cast<double>(k), dp);
  return acc;
}

// R = (Cartan kernel) * sum_m coef_m (E^m K^m) (x) (F^m K^{-m}) for the
// (n+1)-dimensional irrep, with coef_m = (q - 1/q)^m q^{m(m-1)/2} / [m]! times
// the q^{m^2} shift produced by writing the series through E^m K^m and
// F^m K^{-m}.  The Cartan kernel q^{H (x) H / 2} is split through left
// weight projectors Pi_j, so the whole matrix is an exact finite sum of
// Kronecker products A_{j,m} (x) B_{j,m} with
//   A_{j,m} = Pi_j E^m K^m,   B_{j,m} = coef_m D_j F^m K^{-m},
//   D_j = diag_k q^{h_j h_k / 2},  h_k = n - 2k.
// Every entry of R receives exactly one (j, m) contribution, so the assembly
// is cancellation-free at all (n, q).
std::vector<TermPair> sl2_term_list(const Irrep& rep) {
  const auto& dp = rep.dp;
  const long d = rep.dim;
  const long n = rep.n;
  const Matrix& e_op = rep.E[0];
  const Matrix& f_op = rep.F[0];
  const Matrix& k_op = rep.K[0];
  const Matrix k_inv = diag_inverse(k_op);

  std::vector<TermPair> terms;
  terms.reserve(static_cast<size_t>((n + 1) * (n + 2) / 2));
  for (long m = 0; m <= n; ++m) {
    const double coef = std::pow(dp.q_diff(), static_cast<double>(m)) *
                        dp.pow_q(0.5 * static_cast<double>(m) * (m - 1)) /
                        q_factorial(m, dp) *
                        dp.pow_q(static_cast<double>(m) * static_cast<double>(m));
    const Matrix em_km = matrix_power(e_op, m) * matrix_power(k_op, m);
    const Matrix fm_kinvm = matrix_power(f_op, m) * matrix_power(k_inv, m);
    for (long j = 0; j + m <= n; ++j) {
      Matrix a = Matrix::Zero(d, d);
      a.row(j) = em_km.row(j);
      Matrix b = Matrix::Zero(d, d);
      const double hj = static_cast<double>(n - 2 * j);
      for (long k = 0; k < d; ++k) {
        const double hk = static_cast<double>(n - 2 * k);
        b.row(k) = (coef * dp.pow_q(0.5 * hj * hk)) * fm_kinvm.row(k);
      }
      terms.push_back(TermPair{std::move(a), std::move(b)});
    }
  }
  return terms;
}

// Closed form for the vector irrep: with eps_i the weight of basis vector i,
//   R = sum_{i,j} q^{(eps_i, eps_j)} E_ii (x) E_jj
//       + q^{-1/n} (q - 1/q) sum_{i<j} E_ij (x) E_ji.
// Note q^{(eps_i, eps_i)} = q^{1 - 1/n} and q^{(eps_i, eps_j)} = q^{-1/n} for
// i != j, so this is q^{-1/n} [ q sum E_ii(x)E_ii + sum_{i!=j} E_ii(x)E_jj
// + (q - 1/q) sum_{i<j} E_ij(x)E_ji ].
std::vector<TermPair> sln_term_list(const Irrep& rep) {
  const auto& dp = rep.dp;
  const long d = rep.dim;
  const CartanData& cd = rep.cd;

  std::vector<TermPair> terms;
  terms.reserve(static_cast<size_t>(d * d + d * (d - 1) / 2));
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < d; ++j) {
      Matrix a = Matrix::Zero(d, d);
      a(i, i) = 1.0;
      Matrix b = Matrix::Zero(d, d);
      b(j, j) = dp.pow_q(cd.inner(rep.weight_of_basis[static_cast<size_t>(i)],
                                  rep.weight_of_basis[static_cast<size_t>(j)]));
      terms.push_back(TermPair{std::move(a), std::move(b)});
    }
  }
  const double off = dp.pow_q(Rational(-1, d)) * dp.q_diff();
  for (long i = 0; i < d; ++i) {
    for (long j = i + 1; j < d; ++j) {
      Matrix a = Matrix::Zero(d, d);
      a(i, j) = 1.0;
      Matrix b = Matrix::Zero(d, d);
      b(j, i) = off;
      terms.push_back(TermPair{std::move(a), std::move(b)});
    }
  }
  return terms;
}

}  // namespace

RMatrixRep build_r(const Irrep& rep) {
  rep.dp.require_quantum("build_r");
  RMatrixRep rm;
  rm.rep = rep;
  rm.terms =
      (rep.algebra == Algebra::sl2) ? sl2_term_list(rep) : sln_term_list(rep);

  const long d2 = rep.dim * rep.dim;
  rm.R = Matrix::Zero(d2, d2);
  for (const auto& t : rm.terms) rm.R += kron(t.A, t.B);

  rm.k_rho = Matrix::Zero(rep.dim, rep.dim);
  const Weight rho = rep.cd.rho();
  for (long k = 0; k < rep.dim; ++k) {
    rm.k_rho(k, k) =
        rep.dp.pow_q(rep.cd.inner(rho, rep.weight_of_basis[static_cast<size_t>(k)]));
  }

  const double res = intertwiner_residual(rm);
  if (res > 1e-9) {
    std::ostringstream msg;
    msg << "build_r: intertwiner residual " << res << " exceeds 1e-9 for "
        << (rep.algebra == Algebra::sl2 ? "sl2 n=" : "sln n=") << rep.n
        << " q=" << rep.dp.q;
    throw ConstructionError(msg.str());
  }
  return rm;
}

double intertwiner_residual(const RMatrixRep& rm) {
  const Irrep& rep = rm.rep;
  const Matrix p = flip_operator(rep.dim);
  double worst = 0.0;
  for (int t = 0; t < rep.n_simple(); ++t) {
    for (Gen g : {Gen::E, Gen::F, Gen::K}) {
      const Matrix dx = coproduct(rep, g, t);
      const Matrix dx_op = p * dx * p;
      worst = std::max(worst, rel_residual(rm.R * dx, dx_op * rm.R));
    }
  }
  return worst;
}

double yang_baxter_residual(const RMatrixRep& rm) {
  const long d = rm.rep.dim;
  const long d3 = d * d * d;
  const Matrix ident = Matrix::Identity(d, d);
  const Matrix r12 = kron(rm.R, ident);
  const Matrix r23 = kron(ident, rm.R);
  Matrix r13 = Matrix::Zero(d3, d3);
  for (long a = 0; a < d; ++a) {
    for (long b = 0; b < d; ++b) {
      for (long e = 0; e < d; ++e) {
        for (long f = 0; f < d; ++f) {
          const Complex v = rm.R(a * d + e, b * d + f);
          if (v == Complex(0.0, 0.0)) continue;
          for (long c = 0; c < d; ++c) {
            r13((a * d + c) * d + e, (b * d + c) * d + f) = v;
          }
        }
      }
    }
  }
  return rel_residual(r12 * r13 * r23, r23 * r13 * r12);
}

Matrix build_rtr(const RMatrixRep& rm) {
  const Matrix p = flip_operator(rm.rep.dim);
  return (p * rm.R * p) * rm.R;
}

DrinfeldResult drinfeld_v_inverse(const RMatrixRep& rm) {
  const long d = rm.rep.dim;
  const Matrix k2 = rm.k_rho * rm.k_rho;
  Matrix op = Matrix::Zero(d, d);
  for (const auto& t : rm.terms) op += t.B * k2 * t.A;

  DrinfeldResult out;
  out.op = op;
  out.scalar = op.trace() / static_cast<double>(d);
  out.off_residual =
      (op - out.scalar * Matrix::Identity(d, d)).norm() /
      std::max(1.0, std::abs(out.scalar) * std::sqrt(static_cast<double>(d)));
  if (out.off_residual > 1e-9) {
    std::ostringstream msg;
    msg << "drinfeld_v_inverse: contracted operator deviates from a scalar by "
        << out.off_residual << " (> 1e-9) for "
        << (rm.rep.algebra == Algebra::sl2 ? "sl2 n=" : "sln n=") << rm.rep.n
        << " q=" << rm.rep.dp.q
        << "; the alternating-sign contraction is ill-conditioned here";
    throw ConstructionError(msg.str());
  }
  return out;
}

std::vector<Component> tensor_square_branching(const RMatrixRep& rm) {
  const Irrep& rep = rm.rep;
  const CartanData& cd = rep.cd;
  const Rational cas_top = cd.casimir_exponent(rep.highest_weight);

  std::vector<Component> out;
  auto add = [&](Weight mu, long dim) {
    Component c;
    c.dim = dim;
    c.eigenvalue =
        rep.dp.pow_q(cd.casimir_exponent(mu) - Rational(2) * cas_top);
    c.mu = std::move(mu);
    out.push_back(std::move(c));
  };

  if (rep.algebra == Algebra::sl2) {
    const long n = rep.n;
    for (long i = 0; i <= n; ++i) {
      add(Weight({Rational(2 * n - 2 * i)}), 2 * (n - i) + 1);
    }
  } else {
    const long n = rep.n;
    std::vector<Rational> c1(static_cast<size_t>(cd.rank()), Rational(0));
    c1[0] = Rational(2);
    add(Weight(c1), n * (n + 1) / 2);
    std::vector<Rational> c2(static_cast<size_t>(cd.rank()), Rational(0));
    if (n >= 3) c2[1] = Rational(1);  // for n = 2 the complement is trivial
    add(Weight(c2), n * (n - 1) / 2);
  }
  return out;
}

namespace {

void check_battery_or_throw(const RMatrixRep& rm, const Decomposition& dec,
                            const char* who) {
  const double res = decomposition_residual(rm, dec);
  if (res > 1e-8 && !rm.corrupted) {
    std::ostringstream msg;
    msg << who << ": projector validation residual " << res
        << " exceeds 1e-8 for "
        << (rm.rep.algebra == Algebra::sl2 ? "sl2 n=" : "sln n=") << rm.rep.n
        << " q=" << rm.rep.dp.q;
    throw NumericalError(msg.str());
  }
}

}  // namespace

Decomposition decompose_tensor_square(const RMatrixRep& rm) {
  std::vector<Component> comps = tensor_square_branching(rm);

  double xmax = 0.0;
  for (const auto& c : comps) xmax = std::max(xmax, std::abs(c.eigenvalue));
  for (size_t i = 0; i < comps.size(); ++i) {
    for (size_t j = i + 1; j < comps.size(); ++j) {
      const double gap = std::abs(comps[i].eigenvalue - comps[j].eigenvalue);
      if (gap < 1e-6 * xmax) {
        std::ostringstream msg;
        msg << "decompose_tensor_square: eigenvalues for components "
            << comps[i].mu.str() << " and " << comps[j].mu.str()
            << " are separated by only " << gap << " (threshold "
            << 1e-6 * xmax << "); the eigenvalue-interpolation projectors "
            << "would be ill-conditioned";
        throw DegenerateSpectrumError(msg.str());
      }
    }
  }

  const Matrix m_op = build_rtr(rm);
  const long dd = m_op.rows();
  const Matrix ident = Matrix::Identity(dd, dd);
  for (size_t i = 0; i < comps.size(); ++i) {
    Matrix p = ident;
    for (size_t j = 0; j < comps.size(); ++j) {
      if (j == i) continue;
      p = p * (m_op - comps[j].eigenvalue * ident) /
          (comps[i].eigenvalue - comps[j].eigenvalue);
    }
    // Orthonormal column basis for range(P): eigenvectors of the hermitised
    // projector with eigenvalue near 1 (the top `dim` of them).
    Eigen::SelfAdjointEigenSolver<Matrix> es((p + p.adjoint()) / 2.0);
    comps[i].isometry = es.eigenvectors().rightCols(comps[i].dim);
    comps[i].projector = std::move(p);
  }

  Decomposition dec;
  dec.components = std::move(comps);
  check_battery_or_throw(rm, dec, "decompose_tensor_square");
  return dec;
}

Decomposition decompose_tensor_square_ladder(const RMatrixRep& rm) {
  const Irrep& rep = rm.rep;
  const long d = rep.dim;
  const long dd = d * d;

  std::vector<Component> comps = tensor_square_branching(rm);

  std::vector<Weight> prod_weight;
  prod_weight.reserve(static_cast<size_t>(dd));
  for (long a = 0; a < d; ++a) {
    for (long b = 0; b < d; ++b) {
      prod_weight.push_back(rep.weight_of_basis[static_cast<size_t>(a)] +
                            rep.weight_of_basis[static_cast<size_t>(b)]);
    }
  }

  std::vector<Matrix> raise, lower;
  std::vector<double> lower_scale;
  for (int t = 0; t < rep.n_simple(); ++t) {
    raise.push_back(coproduct(rep, Gen::E, t));
    lower.push_back(coproduct(rep, Gen::F, t));
    lower_scale.push_back(std::max(1.0, lower.back().norm()));
  }

  for (auto& comp : comps) {
    // Indices of the weight-mu subspace of V (x) V.
    std::vector<long> sub;
    for (long p = 0; p < dd; ++p) {
      if (prod_weight[static_cast<size_t>(p)] == comp.mu) sub.push_back(p);
    }
    if (sub.empty()) {
      throw NumericalError(
          "decompose_tensor_square_ladder: empty weight space for component " +
          comp.mu.str());
    }

    // Highest-weight vector: kernel of all raising operators restricted to
    // the weight subspace (expected one-dimensional).
    Matrix stacked(static_cast<long>(raise.size()) * dd,
                   static_cast<long>(sub.size()));
    for (size_t s = 0; s < sub.size(); ++s) {
      for (size_t t = 0; t < raise.size(); ++t) {
        stacked.block(static_cast<long>(t) * dd, static_cast<long>(s), dd, 1) =
            raise[t].col(sub[s]);
      }
    }

    Vector hw = Vector::Zero(dd);
    if (stacked.norm() == 0.0) {
      if (sub.size() != 1) {
        throw NumericalError(
            "decompose_tensor_square_ladder: degenerate highest-weight space "
            "for component " +
            comp.mu.str());
      }
      hw(sub[0]) = 1.0;
    } else {
      Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
      const auto& sing = svd.singularValues();
      const long last = static_cast<long>(sub.size()) - 1;
      if (sing(last) > 1e-7 * std::max(1.0, sing(0))) {
        std::ostringstream msg;
        msg << "decompose_tensor_square_ladder: no highest-weight vector for "
            << "component " << comp.mu.str() << " (smallest singular value "
            << sing(last) << ")";
        throw NumericalError(msg.str());
      }
      const Vector v = svd.matrixV().col(last);
      for (size_t s = 0; s < sub.size(); ++s) hw(sub[s]) = v(static_cast<long>(s));
    }
    hw.normalize();

    // Generate the component by repeated lowering; orthonormalise with
    // modified Gram-Schmidt (two passes), FIFO order for determinism.
    std::vector<Vector> basis{hw};
    size_t head = 0;
    while (head < basis.size() && static_cast<long>(basis.size()) <= comp.dim) {
      const Vector u = basis[head++];
      for (size_t t = 0; t < lower.size(); ++t) {
        Vector w = lower[t] * u;
        const double n0 = w.norm();
        // Annihilated up to roundoff: applying the operator to a unit vector
        // leaves absolute noise at the scale of the operator norm, orders of
        // magnitude below any genuine lowering image.
        if (n0 <= 1e-9 * lower_scale[t]) continue;
        for (const auto& b : basis) w -= b.dot(w) * b;
        const double n1 = w.norm();
        if (n1 <= 1e-7 * n0) continue;
        for (const auto& b : basis) w -= b.dot(w) * b;  // re-orthogonalise
        basis.push_back(w / w.norm());
      }
    }
    if (static_cast<long>(basis.size()) != comp.dim) {
      std::ostringstream msg;
      msg << "decompose_tensor_square_ladder: component " << comp.mu.str()
          << " generated " << basis.size() << " vectors, expected "
          << comp.dim;
      throw NumericalError(msg.str());
    }

    Matrix v(dd, comp.dim);
    for (long c = 0; c < comp.dim; ++c) v.col(c) = basis[static_cast<size_t>(c)];
    comp.isometry = v;
    comp.projector = v * v.adjoint();
  }

  Decomposition dec;
  dec.components = std::move(comps);
  check_battery_or_throw(rm, dec, "decompose_tensor_square_ladder");
  return dec;
}

double decomposition_residual(const RMatrixRep& rm, const Decomposition& dec) {
  const Matrix m_op = build_rtr(rm);
  const long dd = m_op.rows();
  const Matrix ident = Matrix::Identity(dd, dd);

  // The eigen-equation residual is measured against the operator's spectral
  // scale, not each component's own eigenvalue: applying the flipped-square
  // operator leaves absolute rounding noise of size eps * max|x_j| on every
  // projector, so a per-component scale would reject numerically perfect
  // projectors whenever the spectrum is spread.
  double x_scale = 1.0;
  for (const auto& c : dec.components)
    x_scale = std::max(x_scale, std::abs(c.eigenvalue));

  double worst = 0.0;
  Matrix sum = Matrix::Zero(dd, dd);
  for (const auto& c : dec.components) {
    sum += c.projector;
    worst = std::max(worst, (c.projector * c.projector - c.projector).norm());
    worst = std::max(worst,
                     std::abs(c.projector.trace().real() -
                              static_cast<double>(c.dim)));
    worst = std::max(worst, std::abs(c.projector.trace().imag()));
    worst = std::max(worst,
                     (m_op * c.projector - c.eigenvalue * c.projector).norm() /
                         x_scale);
  }
  for (size_t i = 0; i < dec.components.size(); ++i) {
    for (size_t j = i + 1; j < dec.components.size(); ++j) {
      worst = std::max(worst, (dec.components[i].projector *
                               dec.components[j].projector)
                                  .norm());
    }
  }
  worst = std::max(worst, (sum - ident).norm());
  return worst;
}

void corrupt_r(RMatrixRep& rm, double eps) {
  rm.R(0, 0) += eps;
  rm.corrupted = true;
}

}  // namespace qdisp
