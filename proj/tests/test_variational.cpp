#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "apgap/maynard.hpp"
#include "apgap/simplex.hpp"

using namespace apgap;

namespace {

std::vector<mpq_class> scaled(const std::vector<mpq_class>& c, const mpq_class& s) {
  std::vector<mpq_class> out;
  for (const auto& v : c) out.push_back(v * s);
  return out;
}

}  // namespace

TEST_CASE("simplex integrals") {
  CHECK(dirichlet_integral(0, {}) == 1);
  CHECK(simplex_monomial_integral(1, {0}) == 1);
  CHECK(simplex_monomial_integral(2, {0, 0}) == mpq_class(1, 2));
  CHECK(simplex_monomial_integral(2, {1, 1}) == mpq_class(1, 24));
  CHECK(simplex_monomial_integral(3, {0, 0, 0}) == mpq_class(1, 6));
  CHECK(dirichlet_integral(1, {0}, 1) == mpq_class(1, 2));  // int_0^1 (1 - t)
  CHECK(orbit_size(3, {1}) == 3);
  CHECK(orbit_size(4, {2, 1}) == 12);
  CHECK(orbit_size(3, {1, 1, 1}) == 1);
}

TEST_CASE("symmetric pair integral expands by monomials") {
  // m_{1}(t1, t2) = t1 + t2, so int m_1^2 over R_2 = 2/12 + 2/24.
  CHECK(symmetric_pair_integral(2, {1}, {1}) == mpq_class(1, 4));
  CHECK(symmetric_pair_integral(2, {}, {1}) == mpq_class(1, 3));
}

TEST_CASE("partition lists") {
  const auto p4 = partitions_up_to(4, 10);
  CHECK(p4.size() == 1 + 1 + 2 + 3 + 5);
  const auto p3 = partitions_up_to(3, 10);
  CHECK(std::equal(p3.begin(), p3.end(), p4.begin()));
  CHECK(partitions_up_to(4, 2).size() == 1 + 1 + 2 + 2 + 3);
  CHECK_THROWS(symmetric_basis(0, 2));
}

TEST_CASE("gram matrices") {
  const auto b20 = symmetric_basis(2, 0);
  CHECK(gram_I(b20) == ExactMatrix{{mpq_class(1, 2)}});
  CHECK(gram_J(b20) == ExactMatrix{{mpq_class(2, 3)}});
  const auto b10 = symmetric_basis(1, 0);
  CHECK(gram_J(b10) == ExactMatrix{{mpq_class(1)}});
  const auto b11 = symmetric_basis(1, 1);
  CHECK(gram_I(b11) == ExactMatrix{{1, mpq_class(1, 2)}, {mpq_class(1, 2), mpq_class(1, 3)}});
  CHECK(gram_J(b11) == ExactMatrix{{1, mpq_class(1, 2)}, {mpq_class(1, 2), mpq_class(1, 4)}});
  const auto b = symmetric_basis(4, 3);
  const auto A = gram_I(b), B = gram_J(b);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      CHECK(A[i][j] == A[j][i]);
      CHECK(B[i][j] == B[j][i]);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_double(B));
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(to_double(A));
  CHECK(ea.eigenvalues().minCoeff() > 0);
}

TEST_CASE("largest generalized eigenvalue") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd B(2, 2);
  B << 3, 0, 0, 1;
  CHECK(max_rayleigh(A, B).lambda == doctest::Approx(3).epsilon(1e-10));
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + trial * 2;
    Eigen::MatrixXd X(n, n), Y(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        X(i, j) = g(rng);
        Y(i, j) = g(rng);
      }
    const Eigen::MatrixXd SA = X * X.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd SB = Y * Y.transpose();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(SB, SA);
    CHECK(max_rayleigh(SA, SB).lambda == doctest::Approx(ges.eigenvalues().maxCoeff()).epsilon(1e-8));
  }
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS(max_rayleigh(bad, B));
}

TEST_CASE("certified lower bounds") {
  const auto one = mk_lower_bound(1, 3);
  CHECK(one.lambda_exact == 1);
  const auto c2 = mk_lower_bound(2, 4);
  CHECK(c2.lambda_exact.get_d() == doctest::Approx(c2.lambda).epsilon(1e-9));
  CHECK(certificate_quotient(c2.basis, c2.c) == c2.lambda_exact);
  CHECK(certificate_quotient(c2.basis, scaled(c2.c, mpq_class(7, 3))) == c2.lambda_exact);
  // Larger bases contain the smaller ones.
  mpq_class prev = 0;
  for (unsigned d = 0; d <= 4; ++d) {
    const auto c = mk_lower_bound(5, d);
    CHECK(c.lambda_exact >= prev);
    prev = c.lambda_exact;
  }
  CHECK(prev.get_d() == doctest::Approx(2.0059).epsilon(1e-4));
  // Constant F on R_2: (2 * 1/3) / (1/2).
  CHECK(certificate_quotient(symmetric_basis(2, 0), {mpq_class(1)}) == mpq_class(4, 3));
  CHECK_THROWS_AS(certificate_quotient(c2.basis, std::vector<mpq_class>(c2.c.size(), 0)), std::domain_error);
}

TEST_CASE("Monte Carlo estimates") {
  VariationalCertificate flat = mk_lower_bound(2, 0);
  CHECK(flat.lambda_exact == mpq_class(4, 3));
  const auto mc = verify_certificate(flat, 200000, 1);
  CHECK(mc.ratio == doctest::Approx(4.0 / 3.0).epsilon(0.01));
  CHECK(mc.contains(4.0 / 3.0));
  const auto c5 = mk_lower_bound(5, 4);
  const auto m5 = verify_certificate(c5, 400000, 2);
  CHECK(std::fabs(m5.ratio - c5.lambda) / c5.lambda < 0.02);
  CHECK(m5.contains(c5.lambda));
  // Same seed, different thread counts.
  const auto a = verify_certificate(c5, 100000, 3, 1);
  const auto b = verify_certificate(c5, 100000, 3, 3);
  CHECK(a.ratio == b.ratio);
  CHECK_THROWS(verify_certificate(c5, 1000, 3));
  CHECK(evaluate_F(flat, {0.2, 0.3}) == doctest::Approx(flat.c[0].get_d()));
}

TEST_CASE("choosing k") {
  const auto table = default_certificate_table();
  CHECK(min_k_for(table, 1, 0.1).certificate.k == 1);
  const auto two = min_k_for(table, 2, 2.0);
  CHECK(two.threshold == 1.0);
  CHECK(two.certificate.k == 2);
  CHECK(min_k_for(table, 2, 1.0).certificate.k == 5);
  CHECK_THROWS_AS(min_k_for(table, 2, 1e-3), std::out_of_range);
  CHECK_THROWS_AS(min_k_for(table, 0, 1.0), std::invalid_argument);
  for (std::size_t i = 1; i < table.size(); ++i) CHECK(table[i].lambda > table[i - 1].lambda);
}
