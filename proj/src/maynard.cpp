#include "apgap/maynard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "apgap/sieve.hpp"

namespace apgap {

namespace {

constexpr unsigned kIterationCap = 10000;
constexpr double kTolerance = 1e-10;
constexpr mp_bitcnt_t kWorkingBits = 512;

// Simplest fraction within tol of v, from continued-fraction convergents.
mpq_class snap(double v, double tol) {
  const bool neg = v < 0;
  double r = std::fabs(v);
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(r);
    const mpz_class az(a);
    mpz_class h2 = az * h1 + h0, k2 = az * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::fabs(std::fabs(v) - h1.get_d() / k1.get_d()) <= tol || r - a < 1e-300) break;
    r = 1.0 / (r - a);
  }
  mpq_class out(h1, k1);
  out.canonicalize();
  return neg ? mpq_class(-out) : out;
}

Eigen::VectorXd start_vector(Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 1.0 / static_cast<double>(i + 2);
  return v.normalized();
}

// Top eigenpair of a symmetric positive semidefinite C by power iteration.
// Stops once the residual |C v - lambda v| is below 1e-10 * max(1, lambda)
// or the quotient has stopped moving at round-off level.
std::pair<double, Eigen::VectorXd> power_iterate(const Eigen::MatrixXd& C, unsigned& iterations) {
  Eigen::VectorXd v = start_vector(C.rows());
  double lambda = 0, previous = -1;
  unsigned stalled = 0;
  for (iterations = 1; iterations <= kIterationCap; ++iterations) {
    Eigen::VectorXd w = C * v;
    lambda = v.dot(w);
    const double scale = std::max(1.0, std::fabs(lambda));
    const double residual = (w - lambda * v).norm();
    const double norm = w.norm();
    if (norm == 0.0) return {0.0, v};
    if (residual <= kTolerance * scale) return {lambda, v};
    stalled = (std::fabs(lambda - previous) <= 1e-15 * scale) ? stalled + 1 : 0;
    if (stalled >= 20) return {lambda, v};
    previous = lambda;
    v = w / norm;
  }
  std::ostringstream os;
  os << "max_rayleigh: no convergence after " << kIterationCap << " iterations, residual "
     << (C * v - lambda * v).norm();
  throw std::runtime_error(os.str());
}

std::string condition_report(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  std::ostringstream os;
  const auto& ev = es.eigenvalues();
  os << "A is not numerically positive definite (eigenvalues in [" << ev.minCoeff() << ", " << ev.maxCoeff()
     << "], condition estimate " << (ev.minCoeff() > 0 ? ev.maxCoeff() / ev.minCoeff() : INFINITY) << ")";
  return os.str();
}

using MpfMatrix = std::vector<std::vector<mpf_class>>;

MpfMatrix to_mpf(const ExactMatrix& m) {
  MpfMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m.size());
    for (const auto& v : m[i]) out[i].emplace_back(v, kWorkingBits);
  }
  return out;
}

// Lower-triangular L with A = L L^T.
MpfMatrix cholesky(const MpfMatrix& A) {
  const std::size_t n = A.size();
  MpfMatrix L(n, std::vector<mpf_class>(n, mpf_class(0, kWorkingBits)));
  for (std::size_t j = 0; j < n; ++j) {
    mpf_class d(A[j][j], kWorkingBits);
    for (std::size_t p = 0; p < j; ++p) d -= L[j][p] * L[j][p];
    if (d <= 0) throw std::runtime_error("mk_lower_bound: Gram matrix of I is not positive definite");
    L[j][j] = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      mpf_class s(A[i][j], kWorkingBits);
      for (std::size_t p = 0; p < j; ++p) s -= L[i][p] * L[j][p];
      L[i][j] = s / L[j][j];
    }
  }
  return L;
}

// Solves L y = b in place.
void forward_solve(const MpfMatrix& L, std::vector<mpf_class>& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t p = 0; p < i; ++p) b[i] -= L[i][p] * b[p];
    b[i] /= L[i][i];
  }
}

// Solves L^T y = b in place.
void backward_solve(const MpfMatrix& L, std::vector<mpf_class>& b) {
  for (std::size_t i = b.size(); i-- > 0;) {
    for (std::size_t p = i + 1; p < b.size(); ++p) b[i] -= L[p][i] * b[p];
    b[i] /= L[i][i];
  }
}

mpq_class quadratic_form(const ExactMatrix& M, const std::vector<mpq_class>& c) {
  mpq_class total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    mpq_class row = 0;
    for (std::size_t j = 0; j < c.size(); ++j) row += M[i][j] * c[j];
    total += c[i] * row;
  }
  return total;
}

u64 splitmix64(u64 z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Nodes and weights on [0, 1].
void gauss_legendre(unsigned n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0);
  weights.assign(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (unsigned m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    nodes[i] = 0.5 * (1 - x);
    weights[i] = 1.0 / ((1 - x * x) * dp * dp);
  }
}

// F expanded on power-sum products, evaluated in long double.
class PowerSumForm {
 public:
  explicit PowerSumForm(const VariationalCertificate& cert) : degree_(cert.basis.max_degree) {
    std::map<Partition, mpq_class> total;
    for (std::size_t i = 0; i < cert.basis.size(); ++i) {
      if (cert.c[i] == 0) continue;
      for (const auto& [nu, coeff] : monomial_to_power_sums(cert.basis.elements[i])) total[nu] += coeff * cert.c[i];
    }
    for (const auto& [nu, coeff] : total) {
      if (coeff == 0) continue;
      terms_.push_back({nu, static_cast<long double>(coeff.get_d())});
    }
  }

  unsigned degree() const { return degree_; }

  // power[r] = sum_i t_i^r for r = 1..degree.
  long double eval(const std::vector<long double>& power) const {
    long double f = 0;
    for (const auto& term : terms_) {
      long double v = term.coeff;
      for (unsigned r : term.nu) v *= power[r];
      f += v;
    }
    return f;
  }

  void power_sums(const long double* t, std::size_t n, std::vector<long double>& power) const {
    power.assign(degree_ + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
      long double x = 1;
      for (unsigned r = 1; r <= degree_; ++r) {
        x *= t[i];
        power[r] += x;
      }
    }
  }

 private:
  struct Term {
    Partition nu;
    long double coeff;
  };
  unsigned degree_;
  std::vector<Term> terms_;
};

struct Moments {
  long double sum = 0, sum_sq = 0;
  void add(long double v) {
    sum += v;
    sum_sq += v * v;
  }
};

}  // namespace

Eigen::MatrixXd to_double(const ExactMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j].get_d();
  }
  return out;
}

RayleighResult max_rayleigh(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows() || A.rows() == 0)
    throw std::invalid_argument("max_rayleigh: need square matrices of equal positive size");
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw std::runtime_error("max_rayleigh: " + condition_report(A));
  const Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd W = L.triangularView<Eigen::Lower>().solve(B);
  Eigen::MatrixXd C = L.triangularView<Eigen::Lower>().solve(W.transpose());
  C = 0.5 * (C + C.transpose()).eval();

  RayleighResult out;
  auto [lambda, v] = power_iterate(C, out.iterations);
  out.c = L.transpose().triangularView<Eigen::Upper>().solve(v);
  out.lambda = out.c.dot(B * out.c) / out.c.dot(A * out.c);
  (void)lambda;
  return out;
}

mpq_class certificate_quotient(const ExactMatrix& A, const ExactMatrix& B, const std::vector<mpq_class>& c) {
  if (c.size() != A.size() || c.size() != B.size()) throw std::invalid_argument("certificate_quotient: size mismatch");
  const mpq_class i_form = quadratic_form(A, c);
  if (i_form == 0) throw std::domain_error("certificate_quotient: I(F) = 0");
  const mpq_class j_form = quadratic_form(B, c);
  if (j_form <= 0) throw std::domain_error("certificate_quotient: sum of J terms is not positive");
  mpq_class q = j_form / i_form;
  q.canonicalize();
  return q;
}

mpq_class certificate_quotient(const SymmetricBasis& basis, const std::vector<mpq_class>& c) {
  return certificate_quotient(gram_I(basis), gram_J(basis), c);
}

VariationalCertificate mk_lower_bound(unsigned k, unsigned max_degree) {
  VariationalCertificate cert;
  cert.k = k;
  cert.degree = max_degree;
  cert.basis = symmetric_basis(k, max_degree);
  const ExactMatrix A = gram_I(cert.basis);
  const ExactMatrix B = gram_J(cert.basis);
  const std::size_t n = A.size();
  // gmpxx sizes expression temporaries from the default precision.
  mpf_set_default_prec(kWorkingBits);

  // C = L^{-1} B L^{-T} in extended precision; monomial Grams are badly
  // conditioned, but C itself is bounded by the top eigenvalue.
  const MpfMatrix L = cholesky(to_mpf(A));
  const MpfMatrix Bf = to_mpf(B);
  MpfMatrix W(n);  // row i of W = column i of L^{-1} B
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpf_class> col(n, mpf_class(0, kWorkingBits));
    for (std::size_t i = 0; i < n; ++i) col[i] = Bf[i][j];
    forward_solve(L, col);
    W[j] = std::move(col);
  }
  Eigen::MatrixXd C(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpf_class> col(n, mpf_class(0, kWorkingBits));
    for (std::size_t i = 0; i < n; ++i) col[i] = W[i][j];
    forward_solve(L, col);
    for (std::size_t i = 0; i < n; ++i) C(i, j) = col[i].get_d();
  }
  C = 0.5 * (C + C.transpose()).eval();

  auto [lambda, v] = power_iterate(C, cert.iterations);
  (void)lambda;
  std::vector<mpf_class> y(n, mpf_class(0, kWorkingBits));
  for (std::size_t i = 0; i < n; ++i) y[i] = mpf_class(v(i), kWorkingBits);
  backward_solve(L, y);
  cert.c.resize(n);
  for (std::size_t i = 0; i < n; ++i) cert.c[i] = mpq_class(y[i]);
  cert.lambda_exact = certificate_quotient(A, B, cert.c);

  // Rounded copies sometimes land on the exact optimum (k = 1 gives F = 1).
  // Any nonzero coefficient vector is a valid witness, so keep the best.
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(y[i].get_d()));
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    std::vector<mpq_class> c(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = snap(y[i].get_d() / scale, tol);
      nonzero = nonzero || c[i] != 0;
    }
    if (!nonzero) continue;
    try {
      mpq_class q = certificate_quotient(A, B, c);
      if (q > cert.lambda_exact) {
        cert.lambda_exact = q;
        cert.c = std::move(c);
      }
    } catch (const std::domain_error&) {
    }
  }
  cert.lambda = cert.lambda_exact.get_d();
  return cert;
}

double evaluate_F(const VariationalCertificate& cert, const std::vector<double>& t) {
  if (t.size() != cert.k) throw std::invalid_argument("evaluate_F: need one coordinate per variable");
  const PowerSumForm form(cert);
  std::vector<long double> pt(t.begin(), t.end());
  std::vector<long double> power;
  form.power_sums(pt.data(), pt.size(), power);
  return static_cast<double>(form.eval(power));
}

MonteCarloCheck verify_certificate(const VariationalCertificate& cert, std::uint64_t samples, std::uint64_t seed,
                                   int threads) {
  if (samples < 100000) throw std::invalid_argument("verify_certificate: need at least 10^5 samples");
  if (cert.c.size() != cert.basis.size()) throw std::invalid_argument("verify_certificate: malformed certificate");
  const unsigned k = cert.k;
  const PowerSumForm form(cert);
  std::vector<double> nodes, weights;
  gauss_legendre(form.degree() / 2 + 1, nodes, weights);

  constexpr std::uint64_t block = 1 << 15;
  const std::uint64_t blocks = (samples + block - 1) / block;
  std::vector<Moments> f_moments(blocks), g_moments(blocks);
  const long nb = static_cast<long>(blocks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (long b = 0; b < nb; ++b) {
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * block;
    const std::uint64_t end = std::min(samples, begin + block);
    std::mt19937_64 rng_f(splitmix64(seed ^ splitmix64(2 * static_cast<u64>(b))));
    std::mt19937_64 rng_g(splitmix64(seed ^ splitmix64(2 * static_cast<u64>(b) + 1)));
    std::exponential_distribution<long double> ex(1.0L);
    std::vector<long double> t(k + 1), power, shifted(form.degree() + 1);
    Moments fm, gm;
    for (std::uint64_t s = begin; s < end; ++s) {
      // Uniform point of R_k: k + 1 exponential spacings, the last one slack.
      long double total = 0;
      for (unsigned i = 0; i <= k; ++i) total += (t[i] = ex(rng_f));
      for (unsigned i = 0; i < k; ++i) t[i] /= total;
      form.power_sums(t.data(), k, power);
      const long double f = form.eval(power);
      fm.add(f * f);

      // Uniform point of R_{k-1} for t_2..t_k, then the t_1 integral.
      total = 0;
      for (unsigned i = 0; i < k; ++i) total += (t[i] = ex(rng_g));
      long double s_sum = 0;
      for (unsigned i = 0; i + 1 < k; ++i) s_sum += (t[i] /= total);
      form.power_sums(t.data(), k - 1, power);
      const long double width = 1 - s_sum;
      long double g = 0;
      for (std::size_t node = 0; node < nodes.size(); ++node) {
        const long double t1 = width * nodes[node];
        long double x = 1;
        for (unsigned r = 1; r <= form.degree(); ++r) {
          x *= t1;
          shifted[r] = power[r] + x;
        }
        g += weights[node] * form.eval(shifted);
      }
      g *= width;
      gm.add(g * g);
    }
    f_moments[b] = fm;
    g_moments[b] = gm;
  }

  long double fs = 0, fss = 0, gs = 0, gss = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    fs += f_moments[b].sum;
    fss += f_moments[b].sum_sq;
    gs += g_moments[b].sum;
    gss += g_moments[b].sum_sq;
  }
  const long double n = static_cast<long double>(samples);
  const long double mf = fs / n, mg = gs / n;
  const long double vf = std::max(0.0L, fss / n - mf * mf);
  const long double vg = std::max(0.0L, gss / n - mg * mg);

  MonteCarloCheck out;
  out.samples = samples;
  out.ratio = static_cast<double>(static_cast<long double>(k) * k * mg / mf);
  const long double rel = std::sqrt(vf / (n * mf * mf) + vg / (n * mg * mg));
  out.sigma = static_cast<double>(out.ratio * rel);
  // Exact cases (constant F on R_1) have sigma = 0; leave room for rounding.
  const double half = 5 * out.sigma + 1e-12 * std::fabs(out.ratio);
  out.ci_lo = out.ratio - half;
  out.ci_hi = out.ratio + half;
  return out;
}

CertificateRecord to_record(const VariationalCertificate& cert, const MonteCarloCheck& mc) {
  return {cert.k, cert.degree, cert.basis.size(), cert.lambda, mc.ratio, mc.ci_lo, mc.ci_hi};
}

KChoice min_k_for(const std::vector<CertificateRecord>& table, unsigned t, double L) {
  if (t == 0) throw std::invalid_argument("min_k_for: t must be positive");
  if (!(L > 0)) throw std::invalid_argument("min_k_for: L must be positive");
  const double threshold = (2.0 * t - 2.0) / L;
  const CertificateRecord* best = nullptr;
  for (const auto& rec : table) {
    if (rec.lambda > threshold && (!best || rec.k < best->k)) best = &rec;
  }
  if (!best) {
    std::ostringstream os;
    os << "min_k_for: cap exceeded, need a certified M_k > " << threshold;
    throw std::out_of_range(os.str());
  }
  return {*best, threshold};
}

std::vector<CertificateRecord> default_certificate_table() {
  static const std::vector<CertificateRecord> table = [] {
    std::vector<CertificateRecord> t;
    for (unsigned k : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 15u, 20u, 30u, 50u, 100u}) {
      const auto cert = mk_lower_bound(k, 4);
      t.push_back({cert.k, cert.degree, cert.basis.size(), cert.lambda, 0.0, 0.0, 0.0});
    }
    return t;
  }();
  return table;
}

}  // namespace apgap
