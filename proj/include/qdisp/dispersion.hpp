#pragma once
// The indeterminacy measure delta on states: the difference between the
// exponentiated-Casimir scalar and the flipped-square expectation value,
// divided by q - 1/q.  Minimal states are exactly those whose tensor square
// lies in the dominant component V(2 lambda).

#include <vector>

#include "qdisp/rmatrix.hpp"

namespace qdisp {

// Unit state in V.  The constructor normalizes; zero or non-finite input is
// rejected with std::invalid_argument.
struct StateVector {
  Vector v;
  explicit StateVector(Vector in);
  long dim() const { return v.size(); }
};

struct DispersionReport {
  double delta = 0.0;      // (term_v2 - term_rtr) / (q - 1/q)
  double term_v2 = 0.0;    // q^{2 (lambda + 2 rho, lambda)}, from the formula
  double term_rtr = 0.0;   // <phi (x) phi | M | phi (x) phi>, M the flipped square
  double min_delta = 0.0;  // closed-form lower bound over all states
  double coherence_defect = 0.0;  // 1 - c_0^2: weight outside V(2 lambda)
  bool is_minimal = false;  // |delta - min_delta| <= 1e-8 * max(1, |min_delta|)
  std::vector<double> c_squared;  // component weights, ordered as dec.components
};

// Evaluates the measure at phi.  term_rtr is computed by applying the
// R-matrix twice with an interleaved flip (never materialising M), term_v2
// comes from the exact exponent formula.  Throws NumericalError if the value
// lands below the closed-form lower bound beyond 1e-9 * max(1, |min_delta|)
// or is non-real; the bound check is suppressed when rm is flagged corrupted
// so fault injection reaches the verdict layer.
DispersionReport delta(const StateVector& phi, const RMatrixRep& rm,
                       const Decomposition& dec);

// True when the tensor square of phi lies in the dominant component within
// tol: 1 - c_0^2 <= tol.
bool is_quasiclassical(const StateVector& phi, const Decomposition& dec,
                       double tol = 1e-8);

// Maximal-torus action phi_k -> exp(i theta f_k) phi_k with integer
// frequencies f_k = 2 (w_k, rho).  The measure is invariant along the orbit.
StateVector torus_orbit(const StateVector& phi, const Irrep& rep, double theta);

}  // namespace qdisp
