#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdisp/irrep.hpp"

using namespace qdisp;

namespace {
const double kQGrid[] = {0.5, 0.9, 1.1, 2.0};
}

TEST_CASE("sl2 trivial and spin-1/2 matrices") {
  auto dp = DeformationParameter::quantum_q(1.7);

  auto r0 = build_sl2_irrep(0, dp);
  CHECK(r0.dim == 1);
  CHECK(r0.E[0].norm() == 0.0);
  CHECK(r0.F[0].norm() == 0.0);
  CHECK(std::abs(r0.K[0](0, 0) - 1.0) < 1e-15);
  CHECK(check_relations(r0).max_residual() == 0.0);

  auto r1 = build_sl2_irrep(1, dp);
  CHECK(r1.dim == 2);
  CHECK(std::abs(r1.E[0](0, 1) - 1.0) < 1e-14);
  CHECK(std::abs(r1.E[0](1, 0)) == 0.0);
  CHECK(std::abs(r1.F[0](1, 0) - 1.0) < 1e-14);
  CHECK(std::abs(r1.K[0](0, 0) - std::sqrt(1.7)) < 1e-14);
  CHECK(std::abs(r1.K[0](1, 1) - 1.0 / std::sqrt(1.7)) < 1e-14);

  CHECK_THROWS_AS(build_sl2_irrep(-1, dp), std::invalid_argument);
  CHECK_THROWS_AS(build_sl2_irrep(2, DeformationParameter::classical_mode()),
                  std::invalid_argument);
}

TEST_CASE("sl2 ladder coefficients carry the q-number products") {
  // n=2, q=2: the rescaled entry pairs into E(1,2)*F(2,1) = [2][1] = 2.5
  auto dp = DeformationParameter::quantum_q(2.0);
  auto r = build_sl2_irrep(2, dp);
  CHECK(std::abs(r.E[0](1, 2) * r.F[0](2, 1) - 2.5) < 1e-13);
  CHECK(std::abs(r.E[0](0, 1) * r.F[0](1, 0) - 2.5) < 1e-13);
}

TEST_CASE("relations hold across the backend grid") {
  for (double q : kQGrid) {
    auto dp = DeformationParameter::quantum_q(q);
    for (int n = 0; n <= 6; ++n) {
      auto rep = build_sl2_irrep(n, dp);
      CHECK(check_relations(rep).max_residual() <= 1e-10);
    }
    for (int n = 2; n <= 6; ++n) {
      auto rep = build_sln_fundamental(n, dp);
      CHECK(check_relations(rep).max_residual() <= 1e-10);
    }
  }
}

TEST_CASE("unitarity contract is exact") {
  auto dp = DeformationParameter::quantum_q(0.7);
  for (int n = 0; n <= 5; ++n) {
    auto rep = build_sl2_irrep(n, dp);
    CHECK((rep.E[0].adjoint() - rep.F[0]).norm() == 0.0);
    CHECK((rep.K[0].adjoint() - rep.K[0]).norm() == 0.0);
  }
  auto rep = build_sln_fundamental(4, dp);
  for (int i = 0; i < rep.n_simple(); ++i) {
    CHECK((rep.E[i].adjoint() - rep.F[i]).norm() == 0.0);
    CHECK((rep.K[i].adjoint() - rep.K[i]).norm() == 0.0);
  }
}

TEST_CASE("highest weight vector and weight bookkeeping") {
  auto dp = DeformationParameter::quantum_q(1.3);
  for (int n = 1; n <= 5; ++n) {
    auto rep = build_sl2_irrep(n, dp);
    Vector e0 = Vector::Zero(rep.dim);
    e0(0) = 1.0;
    CHECK((rep.E[0] * e0).norm() == 0.0);
    CHECK(rep.weight_of_basis[0] == rep.highest_weight);
  }
  auto rep = build_sln_fundamental(3, dp);
  Vector e0 = Vector::Zero(3);
  e0(0) = 1.0;
  for (int i = 0; i < rep.n_simple(); ++i) CHECK((rep.E[i] * e0).norm() == 0.0);
  CHECK(rep.weight_of_basis[0] == rep.highest_weight);
}

TEST_CASE("weight additivity sparsity pattern") {
  auto dp = DeformationParameter::quantum_q(1.9);
  auto check_pattern = [&](const Irrep& rep) {
    for (int i = 0; i < rep.n_simple(); ++i) {
      Weight alpha = rep.cd.alpha(i + 1);
      for (int a = 0; a < rep.dim; ++a)
        for (int b = 0; b < rep.dim; ++b) {
          if (std::abs(rep.E[i](a, b)) > 0.0)
            CHECK(rep.weight_of_basis[a] == rep.weight_of_basis[b] + alpha);
          if (std::abs(rep.F[i](a, b)) > 0.0)
            CHECK(rep.weight_of_basis[a] == rep.weight_of_basis[b] - alpha);
          if (a != b) CHECK(std::abs(rep.K[i](a, b)) == 0.0);
        }
    }
  };
  check_pattern(build_sl2_irrep(4, dp));
  check_pattern(build_sln_fundamental(5, dp));
}

TEST_CASE("q -> 1 continuity of ladder entries") {
  auto dp = DeformationParameter::quantum_q(1.0 + 1e-6);
  for (int n = 1; n <= 6; ++n) {
    auto rep = build_sl2_irrep(n, dp);
    for (int k = 1; k <= n; ++k) {
      double classical = std::sqrt(double(k) * (n - k + 1));
      CHECK(std::abs(rep.E[0](k - 1, k).real() - classical) < 1e-4);
    }
  }
}

TEST_CASE("fault injection: zeroed E breaks the commutator relation") {
  auto dp = DeformationParameter::quantum_q(1.5);
  auto rep = build_sl2_irrep(3, dp);
  rep.E[0].setZero();
  bool found = false;
  for (const auto& [name, r] : check_relations(rep).residuals)
    if (name.rfind("[E,F]", 0) == 0 && r > 0.1) found = true;
  CHECK(found);
}

TEST_CASE("sln fundamental structure") {
  auto dp = DeformationParameter::quantum_q(1.7);

  // n = 2 coincides with sl2 spin 1/2
  auto a = build_sln_fundamental(2, dp);
  auto b = build_sl2_irrep(1, dp);
  CHECK((a.E[0] - b.E[0]).norm() < 1e-15);
  CHECK((a.F[0] - b.F[0]).norm() < 1e-15);
  CHECK((a.K[0] - b.K[0]).norm() < 1e-15);

  // sl3: K_1 = diag(q^{1/2}, q^{-1/2}, 1)
  auto r3 = build_sln_fundamental(3, dp);
  CHECK(std::abs(r3.K[0](0, 0) - std::sqrt(1.7)) < 1e-14);
  CHECK(std::abs(r3.K[0](1, 1) - 1.0 / std::sqrt(1.7)) < 1e-14);
  CHECK(std::abs(r3.K[0](2, 2) - 1.0) < 1e-14);

  // disjoint matrix units commute exactly
  auto r5 = build_sln_fundamental(5, dp);
  for (int i = 0; i < r5.n_simple(); ++i)
    for (int j = 0; j < r5.n_simple(); ++j)
      if (i != j)
        CHECK((r5.E[i] * r5.F[j] - r5.F[j] * r5.E[i]).norm() == 0.0);

  CHECK_THROWS_AS(build_sln_fundamental(1, dp), std::invalid_argument);
}

TEST_CASE("coproduct matrices") {
  auto dp = DeformationParameter::quantum_q(2.0);
  auto rep = build_sl2_irrep(1, dp);
  const double q = dp.q;

  // Delta(K) = diag(q, 1, 1, 1/q) for spin 1/2
  Matrix dk = coproduct(rep, Gen::K);
  CHECK(std::abs(dk(0, 0) - q) < 1e-14);
  CHECK(std::abs(dk(1, 1) - 1.0) < 1e-14);
  CHECK(std::abs(dk(2, 2) - 1.0) < 1e-14);
  CHECK(std::abs(dk(3, 3) - 1.0 / q) < 1e-14);

  // Delta(E) e1 (x) e1 = q^{-1/2} e0 (x) e1 + q^{1/2} e1 (x) e0
  Matrix de = coproduct(rep, Gen::E);
  Vector v = Vector::Zero(4);
  v(3) = 1.0;  // e1 (x) e1
  Vector w = de * v;
  CHECK(std::abs(w(1) - std::pow(q, -0.5)) < 1e-14);  // e0 (x) e1
  CHECK(std::abs(w(2) - std::pow(q, 0.5)) < 1e-14);   // e1 (x) e0
  CHECK(std::abs(w(0)) == 0.0);
  CHECK(std::abs(w(3)) == 0.0);
}

TEST_CASE("coproduct is an algebra map") {
  // the Delta images must satisfy the same relations as the generators
  for (double q : {0.5, 1.3}) {
    auto dp = DeformationParameter::quantum_q(q);
    for (auto rep : {build_sl2_irrep(3, dp), build_sln_fundamental(3, dp)}) {
      for (int i = 0; i < rep.n_simple(); ++i) {
        Matrix dE = coproduct(rep, Gen::E, i);
        Matrix dF = coproduct(rep, Gen::F, i);
        Matrix dK = coproduct(rep, Gen::K, i);
        Matrix dKinv = diag_inverse(dK);
        CHECK((dK * dE * dKinv - dp.q * dE).norm() <= 1e-10);
        CHECK((dK * dF * dKinv - dF / dp.q).norm() <= 1e-10);
        Matrix rhs = (dK * dK - dKinv * dKinv) / dp.q_diff();
        CHECK((dE * dF - dF * dE - rhs).norm() <= 1e-10);
      }
    }
  }
}
