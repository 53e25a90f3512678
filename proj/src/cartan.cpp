#include "qdisp/cartan.hpp"

#include <cmath>
#include <sstream>

namespace qdisp {

DeformationParameter DeformationParameter::quantum_eta(double eta) {
  if (!std::isfinite(eta)) throw std::invalid_argument("eta must be finite");
  if (std::abs(eta) < eta_min)
    throw std::invalid_argument("quantum mode requires |eta| >= 1e-9 (q != 1)");
  DeformationParameter dp;
  dp.eta = eta;
  dp.q = std::exp(eta);
  dp.classical = false;
  return dp;
}

DeformationParameter DeformationParameter::quantum_q(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  return quantum_eta(std::log(q));
}

DeformationParameter DeformationParameter::classical_mode() {
  DeformationParameter dp;
  dp.eta = 0.0;
  dp.q = 1.0;
  dp.classical = true;
  return dp;
}

void DeformationParameter::require_quantum(const char* who) const {
  if (classical)
    throw std::invalid_argument(std::string(who) + ": classical-mode parameter not allowed");
}

bool Weight::is_dominant() const {
  for (const auto& c : coords)
    if (c < 0) return false;
  return true;
}

bool Weight::is_zero() const {
  // Mixed rational/integer ==,!= are avoided throughout: under C++20 operator
  // rewriting, boost 1.74's reversed operator== recurses into itself.
  for (const auto& c : coords)
    if (c != Rational(0)) return false;
  return true;
}

Weight Weight::operator+(const Weight& o) const {
  if (coords.size() != o.coords.size()) throw std::invalid_argument("weight rank mismatch");
  Weight r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  if (coords.size() != o.coords.size()) throw std::invalid_argument("weight rank mismatch");
  Weight r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

Weight Weight::operator*(const Rational& s) const {
  Weight r = *this;
  for (auto& c : r.coords) c *= s;
  return r;
}

std::string Weight::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ",";
    os << coords[i].numerator();
    if (coords[i].denominator() != 1) os << "/" << coords[i].denominator();
  }
  os << ")";
  return os.str();
}

CartanData CartanData::make_sln(int n) {
  if (n < 2) throw std::invalid_argument("sl_n requires n >= 2");
  return CartanData{Algebra::sln, n};
}

Rational CartanData::inner(const Weight& a, const Weight& b) const {
  if (a.rank() != rank() || b.rank() != rank())
    throw std::invalid_argument("weight rank does not match algebra rank");
  Rational sum(0);
  for (int i = 1; i <= rank(); ++i) {
    if (a.coords[i - 1] == Rational(0)) continue;
    for (int j = 1; j <= rank(); ++j) {
      if (b.coords[j - 1] == Rational(0)) continue;
      Rational wij(static_cast<long long>(std::min(i, j)) * (N - std::max(i, j)), N);
      sum += a.coords[i - 1] * b.coords[j - 1] * wij;
    }
  }
  return sum;
}

Weight CartanData::rho() const {
  return Weight(std::vector<Rational>(rank(), Rational(1)));
}

Weight CartanData::alpha(int i) const {
  if (i < 1 || i > rank()) throw std::invalid_argument("simple-root index out of range");
  // alpha_i = 2 omega_i - omega_{i-1} - omega_{i+1} (Cartan matrix row).
  Weight a = Weight::zero(rank());
  a.coords[i - 1] = 2;
  if (i - 2 >= 0) a.coords[i - 2] = -1;
  if (i < rank()) a.coords[i] = -1;
  return a;
}

Rational CartanData::casimir_exponent(const Weight& lambda) const {
  if (!lambda.is_dominant())
    throw std::invalid_argument("casimir_exponent: weight must be dominant");
  return inner(lambda + rho() * Rational(2), lambda);
}

double q_number(double m, const DeformationParameter& dp) {
  dp.require_quantum("q_number");
  return (dp.pow_q(m) - dp.pow_q(-m)) / dp.q_diff();
}

double q_number(const Rational& m, const DeformationParameter& dp) {
  return q_number(to_double(m), dp);
}

double min_delta_formula(const Weight& lambda, const DeformationParameter& dp,
                         const CartanData& cd) {
  dp.require_quantum("min_delta_formula");
  if (!lambda.is_dominant())
    throw std::invalid_argument("min_delta_formula: weight must be dominant");
  const Rational e1 = cd.casimir_exponent(lambda) * 2;
  const Rational e2 = cd.inner(lambda, lambda) * 2;
  return (dp.pow_q(e1) - dp.pow_q(e2)) / dp.q_diff();
}

}  // namespace qdisp
