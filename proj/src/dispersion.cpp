#include "qdisp/dispersion.hpp"

#include <cmath>
#include <sstream>

namespace qdisp {

StateVector::StateVector(Vector in) : v(std::move(in)) {
  if (v.size() == 0) throw std::invalid_argument("state vector must be nonempty");
  if (!v.allFinite()) throw std::invalid_argument("state vector must be finite");
  const double n = v.norm();
  if (n < 1e-300) throw std::invalid_argument("state vector must be nonzero");
  v /= n;
}

DispersionReport delta(const StateVector& phi, const RMatrixRep& rm,
                       const Decomposition& dec) {
  const Irrep& rep = rm.rep;
  const long d = rep.dim;
  if (phi.dim() != d)
    throw std::invalid_argument("delta: state dimension does not match irrep");

  DispersionReport out;
  out.term_v2 =
      rep.dp.pow_q(Rational(2) * rep.cd.casimir_exponent(rep.highest_weight));
  out.min_delta = min_delta_formula(rep.highest_weight, rep.dp, rep.cd);

  // u = phi (x) phi; <u, M u> with M = (P R P) R applied as two mat-vecs.
  Vector u(d * d);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) u(a * d + b) = phi.v(a) * phi.v(b);
  const Vector mu = flip_vector(rm.R * flip_vector(rm.R * u, d), d);
  const Complex expect = u.dot(mu);  // conjugates the left argument

  // Rounding in the two mat-vecs is absolute at the scale of the largest
  // eigenvalue of M (the intermediates cancel down from that magnitude), so
  // tolerance bands get an allowance of 1e-13 * max|x_i| on the expectation
  // scale.  Real defects (e.g. injected R corruption) sit orders above it.
  double x_absmax = 0.0;
  for (const auto& c : dec.components)
    x_absmax = std::max(x_absmax, std::abs(c.eigenvalue));
  const double expect_noise = 1e-13 * x_absmax;

  const double scale = std::max(1.0, std::abs(expect.real()));
  if (!std::isfinite(expect.real()) ||
      std::abs(expect.imag()) > 1e-9 * scale + expect_noise) {
    std::ostringstream msg;
    msg << "delta: flipped-square expectation is not real ("
        << expect.real() << " + " << expect.imag() << "i)";
    throw NumericalError(msg.str());
  }
  out.term_rtr = expect.real();
  out.delta = (out.term_v2 - out.term_rtr) / rep.dp.q_diff();

  out.c_squared.reserve(dec.components.size());
  double c0 = 0.0;
  for (size_t i = 0; i < dec.components.size(); ++i) {
    const double ci = (u.dot(dec.components[i].projector * u)).real();
    out.c_squared.push_back(ci);
    if (i == 0) c0 = ci;
  }
  out.coherence_defect = 1.0 - c0;

  const double tol_band = std::max(1.0, std::abs(out.min_delta));
  out.is_minimal = std::abs(out.delta - out.min_delta) <= 1e-8 * tol_band;

  if (!std::isfinite(out.delta)) {
    throw NumericalError("delta: non-finite value");
  }
  const double bound_band =
      1e-9 * tol_band + expect_noise / std::abs(rep.dp.q_diff());
  if (!rm.corrupted && out.delta < out.min_delta - bound_band) {
    std::ostringstream msg;
    msg << "delta: value " << out.delta << " violates the lower bound "
        << out.min_delta << " beyond tolerance";
    throw NumericalError(msg.str());
  }
  return out;
}

bool is_quasiclassical(const StateVector& phi, const Decomposition& dec,
                       double tol) {
  if (dec.components.empty())
    throw std::invalid_argument("is_quasiclassical: empty decomposition");
  const long dd = dec.components[0].projector.rows();
  const long d = phi.dim();
  if (d * d != dd)
    throw std::invalid_argument(
        "is_quasiclassical: state dimension does not match decomposition");
  Vector u(dd);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) u(a * d + b) = phi.v(a) * phi.v(b);
  const double c0 = (u.dot(dec.components[0].projector * u)).real();
  return 1.0 - c0 <= tol;
}

StateVector torus_orbit(const StateVector& phi, const Irrep& rep,
                        double theta) {
  if (phi.dim() != rep.dim)
    throw std::invalid_argument("torus_orbit: state dimension mismatch");
  Vector out(rep.dim);
  const Weight rho = rep.cd.rho();
  for (int k = 0; k < rep.dim; ++k) {
    const Rational f =
        rep.cd.inner(rep.weight_of_basis[static_cast<size_t>(k)], rho) *
        Rational(2);
    out(k) = std::polar(1.0, theta * to_double(f)) * phi.v(k);
  }
  return StateVector(std::move(out));
}

}  // namespace qdisp
