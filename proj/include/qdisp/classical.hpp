#pragma once
// Undeformed (q = 1) counterpart: an orthonormal hermitian generator basis of
// the compact real form on the classical irrep, the classical dispersion
// computed two independent ways, and the continuum-limit check connecting the
// deformed measure to the classical dispersion as eta -> 0.

#include <vector>

#include "qdisp/dispersion.hpp"

namespace qdisp {

// Hermitian generators {e_i} acting on the classical irrep, normalized so
// that sum_i e_i^2 is the quadratic Casimir with eigenvalue
// (lambda + 2 rho, lambda) (the same exponent normalization the deformed
// side uses).  The representation index tr(e_i e_j) = I_V delta_ij with
// I_V = dim * (lambda + 2 rho, lambda) / dim_g.
struct ClassicalBasis {
  Algebra algebra = Algebra::sl2;
  int n = 0;
  int dim = 0;
  CartanData cd;
  Weight highest_weight;
  std::vector<Matrix> basis;  // dim_g hermitian matrices
  Matrix casimir;             // sum_i basis[i]^2 (scalar on the irrep)
};

// Spin-n/2 irrep of su(2): basis {H/sqrt(2), (E+F)/sqrt(2), (E-F)/(i sqrt 2)}.
ClassicalBasis build_classical_sl2(int n);

// Fundamental irrep of su(n): trace-orthonormal generalized Gell-Mann basis.
ClassicalBasis build_classical_sln(int n);

struct ClassicalDispersionReport {
  double direct = 0.0;  // sum_i [ <e_i^2> - <e_i>^2 ]
  double two_site = 0.0;  // <C> - <phi(x)phi| Q |phi(x)phi>, Q built from the
                          // coproduct difference [D(C) - C(x)1 - 1(x)C]/2
};

// Classical dispersion of a state, computed both ways; they agree to 1e-10.
ClassicalDispersionReport classical_dispersion(const StateVector& phi,
                                               const ClassicalBasis& cb);

// Minimum of the classical dispersion over all states: 2 (rho, lambda),
// attained exactly on the orbit of the highest-weight state.
double classical_min(const ClassicalBasis& cb);

// The two-site operator Q computed from the coproduct difference; equals
// sum_i e_i (x) e_i.
Matrix two_site_operator(const ClassicalBasis& cb);

struct LimitCheckResult {
  std::vector<double> etas;
  std::vector<double> deltas;   // deformed measure at each eta
  std::vector<double> errors;   // |delta(eta) - classical dispersion|
  double classical_value = 0.0;
  double slope = 0.0;  // least-squares slope of log(error) vs log(eta)
};

// Evaluates the deformed measure on the same state at each eta and compares
// with the classical dispersion; the error shrinks linearly in eta, so the
// fitted log-log slope is ~1.
LimitCheckResult limit_check(const StateVector& phi, Algebra algebra, int n,
                             const std::vector<double>& etas);

}  // namespace qdisp
