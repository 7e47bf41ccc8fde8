#include "freedim/linalg.hpp"
#include "freedim/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

extern "C" void zgesvd_(const char* jobu, const char* jobvt, const int* m, const int* n,
                        std::complex<double>* a, const int* lda, double* s, std::complex<double>* u,
                        const int* ldu, std::complex<double>* vt, const int* ldvt,
                        std::complex<double>* work, const int* lwork, double* rwork, int* info);

namespace freedim {

namespace {

constexpr double kZeroFloor = 1e-13;

Eigen::Index count_rank(const RealVector& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) <= kZeroFloor) return 0;
  const double cut = rel_tol * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

struct Svd {
  RealVector values;
  Matrix u;
  Matrix v;
};

// jobu/jobv: 'N' none, 'S' thin, 'A' full.
Svd lapack_svd(Matrix a, char jobu, char jobv) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const int k = std::min(m, n);
  Svd out;
  out.values.resize(k);
  const int ucols = jobu == 'A' ? m : (jobu == 'S' ? k : 1);
  const int vrows = jobv == 'A' ? n : (jobv == 'S' ? k : 1);
  Matrix u(jobu == 'N' ? 1 : m, ucols);
  Matrix vt(vrows, jobv == 'N' ? 1 : n);
  const int ldu = static_cast<int>(u.rows());
  const int ldvt = static_cast<int>(vt.rows());
  std::vector<double> rwork(static_cast<std::size_t>(5 * std::max(k, 1)));
  int info = 0;
  int lwork = -1;
  std::complex<double> query;
  zgesvd_(&jobu, &jobv, &m, &n, a.data(), &m, out.values.data(), u.data(), &ldu, vt.data(), &ldvt,
          &query, &lwork, rwork.data(), &info);
  lwork = std::max(1, static_cast<int>(query.real()));
  std::vector<std::complex<double>> work(static_cast<std::size_t>(lwork));
  zgesvd_(&jobu, &jobv, &m, &n, a.data(), &m, out.values.data(), u.data(), &ldu, vt.data(), &ldvt,
          work.data(), &lwork, rwork.data(), &info);
  if (info != 0) throw std::runtime_error("zgesvd failed with info " + std::to_string(info));
  if (jobu != 'N') out.u = std::move(u);
  if (jobv != 'N') out.v = vt.adjoint();
  return out;
}

}  // namespace

Tolerances Tolerances::from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("FREEDIM_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) tol.operator_residual = v;
  }
  return tol;
}

double hermitian_defect(const Matrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Matrix numerical_span(const Matrix& vectors, double rel_tol) {
  if (vectors.cols() == 0 || vectors.rows() == 0) return Matrix(vectors.rows(), 0);
  const Svd svd = lapack_svd(vectors, 'S', 'N');
  const Eigen::Index r = count_rank(svd.values, rel_tol);
  return svd.u.leftCols(r);
}

Eigen::Index numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  return count_rank(lapack_svd(a, 'N', 'N').values, rel_tol);
}

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector(0);
  return lapack_svd(a, 'N', 'N').values;
}

Matrix null_space(const Matrix& a, double rel_tol) {
  if (a.cols() == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(a.cols(), a.cols());
  const Svd svd = lapack_svd(a, 'N', 'A');
  const Eigen::Index r = count_rank(svd.values, rel_tol);
  return svd.v.rightCols(a.cols() - r);
}

Matrix orthogonal_complement(const Matrix& basis, Eigen::Index ambient) {
  if (basis.cols() == 0) return Matrix::Identity(ambient, ambient);
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ() * Matrix::Identity(ambient, ambient);
  return q.rightCols(ambient - basis.cols());
}

double residual_outside(const Matrix& basis, const Matrix& vectors) {
  if (vectors.cols() == 0) return 0.0;
  const Matrix r = basis.cols() == 0 ? vectors : Matrix(vectors - basis * (basis.adjoint() * vectors));
  return r.colwise().norm().maxCoeff();
}

double subspace_distance(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const double ab = (a - b * (b.adjoint() * a)).norm();
  const double ba = (b - a * (a.adjoint() * b)).norm();
  return std::max(ab, ba);
}

Vector flatten(std::span<const Matrix> tuple) {
  Eigen::Index total = 0;
  for (const auto& m : tuple) total += m.size();
  Vector v(total);
  Eigen::Index off = 0;
  for (const auto& m : tuple) {
    v.segment(off, m.size()) = Eigen::Map<const Vector>(m.data(), m.size());
    off += m.size();
  }
  return v;
}

std::vector<Matrix> unflatten(const Eigen::Ref<const Vector>& v, Eigen::Index n, Eigen::Index d) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix m(d, d);
    Eigen::Map<Vector>(m.data(), d * d) = v.segment(j * d * d, d * d);
    out.push_back(std::move(m));
  }
  return out;
}

Matrix random_matrix(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = cplx(normal(rng), normal(rng));
  return m;
}

Matrix random_hermitian(Eigen::Index d, Rng& rng) {
  const Matrix m = random_matrix(d, rng);
  return (m + m.adjoint()) / 2.0;
}

Matrix random_unitary(Eigen::Index d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(d, rng));
  return qr.householderQ() * Matrix::Identity(d, d);
}

IncrementalBasis::IncrementalBasis(Eigen::Index ambient, double rel_tol)
    : basis_(ambient, 0), rel_tol_(rel_tol) {}

bool IncrementalBasis::try_add(const Vector& v) {
  const double norm = v.norm();
  if (norm <= kZeroFloor || count_ >= basis_.rows()) return false;
  Vector r = v;
  for (int pass = 0; pass < 2; ++pass) {
    if (count_ > 0) {
      const auto q = basis_.leftCols(count_);
      r -= q * (q.adjoint() * r);
    }
  }
  const double rn = r.norm();
  if (rn <= rel_tol_ * norm) return false;
  if (basis_.cols() == count_) basis_.conservativeResize(Eigen::NoChange, std::max<Eigen::Index>(4, 2 * count_));
  basis_.col(count_++) = r / rn;
  return true;
}

}  // namespace freedim
