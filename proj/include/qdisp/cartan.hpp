#pragma once
#include <boost/rational.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "qdisp/errors.hpp"

namespace qdisp {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

enum class Algebra { sl2, sln };

// q = exp(eta), real eta with |eta| >= eta_min in quantum mode. Classical mode is
// a distinct construction; quantum-mode operations reject it.
struct DeformationParameter {
  double eta = 0.0;
  double q = 1.0;
  bool classical = false;

  static constexpr double eta_min = 1e-9;

  static DeformationParameter quantum_eta(double eta);
  static DeformationParameter quantum_q(double q);
  static DeformationParameter classical_mode();

  // q^x through std::pow so that dyadic bases give exact powers (2^3 = 8
  // exactly); routing through exp(eta * x) would double-round via eta = ln q.
  double pow_q(double x) const { return std::pow(q, x); }
  double pow_q(const Rational& x) const { return pow_q(to_double(x)); }
  double q_diff() const { return q - 1.0 / q; }  // q - q^{-1}
  void require_quantum(const char* who) const;
};

// Weight-lattice point, coordinates in the fundamental-weight basis (exact rationals).
struct Weight {
  std::vector<Rational> coords;

  Weight() = default;
  explicit Weight(std::vector<Rational> c) : coords(std::move(c)) {}
  static Weight zero(int rank) { return Weight(std::vector<Rational>(rank, Rational(0))); }

  int rank() const { return static_cast<int>(coords.size()); }
  bool is_dominant() const;
  bool is_zero() const;
  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator*(const Rational& s) const;
  bool operator==(const Weight& o) const { return coords == o.coords; }
  std::string str() const;
};

// Exact inner-product data for sl_N (sl2 is N = 2), normalized so (alpha, alpha) = 2
// for the simple roots. (omega_i, omega_j) = min(i,j) * (N - max(i,j)) / N from the
// inverse Cartan matrix.
struct CartanData {
  Algebra algebra = Algebra::sl2;
  int N = 2;  // sl_N; rank N-1

  static CartanData make_sl2() { return CartanData{Algebra::sl2, 2}; }
  static CartanData make_sln(int n);

  int rank() const { return N - 1; }
  Rational inner(const Weight& a, const Weight& b) const;
  Weight rho() const;       // half-sum of positive roots = sum of fundamental weights
  Weight alpha(int i) const;  // simple root alpha_i in the fundamental basis
  // (lambda + 2 rho, lambda), exact; lambda must be dominant.
  Rational casimir_exponent(const Weight& lambda) const;
};

// [m]_q = (q^m - q^{-m}) / (q - q^{-1}); continuous in m.
double q_number(double m, const DeformationParameter& dp);
double q_number(const Rational& m, const DeformationParameter& dp);

// Min(delta) = [q^{2(lambda+2rho,lambda)} - q^{2(lambda,lambda)}] / (q - q^{-1}).
double min_delta_formula(const Weight& lambda, const DeformationParameter& dp,
                         const CartanData& cd);

}  // namespace qdisp
