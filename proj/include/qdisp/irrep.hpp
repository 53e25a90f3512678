#pragma once
#include <string>
#include <utility>
#include <vector>

#include "qdisp/cartan.hpp"
#include "qdisp/linalg.hpp"

namespace qdisp {

// Irreducible representation as explicit generator matrices, one (E, F, K) triple
// per simple root. Basis vector 0 is the highest weight vector; the basis is
// symmetrically rescaled so that F_i is exactly the transpose of E_i (making the
// compact-form involution literal conjugate-transpose).
struct Irrep {
  Algebra algebra = Algebra::sl2;
  int n = 0;  // sl2: lambda = n omega; sln: the n of sl_n (dim = n)
  int dim = 0;
  DeformationParameter dp;
  CartanData cd;
  Weight highest_weight;
  std::vector<Matrix> E, F, K;
  std::vector<Weight> weight_of_basis;

  int n_simple() const { return static_cast<int>(E.size()); }
};

// V(n omega) for U_q(sl2): dim n+1, K e_k = q^{(n-2k)/2} e_k,
// E e_k = sqrt([k][n-k+1]) e_{k-1}, F = E^T.
Irrep build_sl2_irrep(int n, const DeformationParameter& dp);

// Fundamental V(omega_1) of U_q(sl_n): dim n, E_i / F_i are matrix units,
// K_i e_w = q^{(alpha_i, w)/2} e_w. n = 2 coincides with build_sl2_irrep(1, dp).
Irrep build_sln_fundamental(int n, const DeformationParameter& dp);

enum class Gen { E, F, K };

// Coproduct matrices on V (x) V:
// Delta(E) = E (x) K + K^{-1} (x) E, Delta(F) = F (x) K + K^{-1} (x) F,
// Delta(K) = K (x) K. The same convention is consumed by the R-matrix builder.
Matrix coproduct(const Irrep& rep, Gen g, int i = 0);

struct RelationReport {
  std::vector<std::pair<std::string, double>> residuals;
  double max_residual() const;
  std::string str() const;
};

// Frobenius-norm residuals of the defining relations, the Serre relations
// (sl_n), and the unitarity contract (E^dagger = F, K^dagger = K).
RelationReport check_relations(const Irrep& rep);

}  // namespace qdisp
