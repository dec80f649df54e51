// Lower bounds for M_k = sup_F (sum_m J_k^(m)(F)) / I_k(F) over symmetric
// polynomial F supported on the simplex.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "apgap/simplex.hpp"

namespace apgap {

struct RayleighResult {
  double lambda = 0;
  Eigen::VectorXd c;
  unsigned iterations = 0;
};

/// Largest generalized eigenvalue of B c = lambda A c for symmetric A > 0:
/// Cholesky of A, then power iteration on L^{-1} B L^{-T} (tolerance 1e-10,
/// at most 10^4 steps). Throws std::runtime_error when A is not numerically
/// positive definite or the iteration does not settle.
RayleighResult max_rayleigh(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

Eigen::MatrixXd to_double(const ExactMatrix& m);

struct VariationalCertificate {
  unsigned k = 0;
  unsigned degree = 0;
  SymmetricBasis basis;
  std::vector<mpq_class> c;   // exact coefficients of F on the basis
  mpq_class lambda_exact;     // c^T B c / c^T A c
  double lambda = 0;
  unsigned iterations = 0;
};

/// Quotient of the explicit F given by c. Throws std::domain_error when
/// c^T A c = 0 or c^T B c <= 0 (the sum of J terms must be positive).
mpq_class certificate_quotient(const SymmetricBasis& basis, const std::vector<mpq_class>& c);
mpq_class certificate_quotient(const ExactMatrix& A, const ExactMatrix& B, const std::vector<mpq_class>& c);

/// The top generalized eigenpair is found in extended precision, then the
/// returned lambda is recomputed exactly from the rational coefficients, so it
/// is a true lower bound for M_k.
VariationalCertificate mk_lower_bound(unsigned k, unsigned max_degree);

struct MonteCarloCheck {
  std::uint64_t samples = 0;
  double ratio = 0;   // estimate of sum_m J^(m)(F) / I(F)
  double sigma = 0;   // standard error (delta method)
  double ci_lo = 0;   // ratio -/+ (5 sigma + 1e-12 |ratio|)
  double ci_hi = 0;
  bool contains(double lambda) const { return lambda >= ci_lo && lambda <= ci_hi; }
};

/// Independent estimate of the quotient: I from uniform points of R_k, the
/// J term from uniform points of R_{k-1} with the inner t_1 integral done by
/// Gauss-Legendre (exact for the polynomial degree). Sampling uses
/// exponential spacings with per-block seeds. Requires samples >= 10^5.
MonteCarloCheck verify_certificate(const VariationalCertificate& cert, std::uint64_t samples,
                                   std::uint64_t seed = 0, int threads = 0);

/// Value of F at one point of R_k (for tests).
double evaluate_F(const VariationalCertificate& cert, const std::vector<double>& t);

struct CertificateRecord {
  unsigned k = 0;
  unsigned degree = 0;
  std::size_t basis_size = 0;
  double lambda = 0;
  double mc_ratio = 0;
  double mc_ci_lo = 0;
  double mc_ci_hi = 0;
};

CertificateRecord to_record(const VariationalCertificate& cert, const MonteCarloCheck& mc);

struct KChoice {
  CertificateRecord certificate;
  double threshold = 0;  // (2t - 2) / L
};

/// Least tabulated k whose certified bound exceeds (2t - 2)/L. Certified
/// bounds are lower bounds, so the k is sound but may not be minimal.
/// Throws std::out_of_range ("cap exceeded") when no entry qualifies.
KChoice min_k_for(const std::vector<CertificateRecord>& table, unsigned t, double L);

/// Table used by the gap pipeline when none is supplied: degree 4 certificates
/// for k = 1..10, 15, 20, 30, 50, 100, without Monte-Carlo fields.
std::vector<CertificateRecord> default_certificate_table();

}  // namespace apgap
