#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace freedim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// <S, T>_HS = Tr(T* S), linear in the first argument.
inline cplx hs_inner(const Matrix& s, const Matrix& t) {
  return (t.conjugate().cwiseProduct(s)).sum();
}

/// Largest entry of |a - a*|.
double hermitian_defect(const Matrix& a);

/// Orthonormal basis (as columns) of the span of the columns of `vectors`.
/// Singular values below rel_tol * sigma_max are dropped; a set whose largest
/// singular value is below 1e-13 spans the zero space.
Matrix numerical_span(const Matrix& vectors, double rel_tol = 1e-9);
Eigen::Index numerical_rank(const Matrix& a, double rel_tol = 1e-9);
/// Descending.
RealVector singular_values(const Matrix& a);

/// Orthonormal basis of the kernel of `a`.
Matrix null_space(const Matrix& a, double rel_tol = 1e-9);

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns of `basis` inside C^ambient.
Matrix orthogonal_complement(const Matrix& basis, Eigen::Index ambient);

/// max(||(I - P_b) a||_F, ||(I - P_a) b||_F) for orthonormal column sets;
/// an upper bound on the sine of the largest principal angle. Returns 1 when
/// the dimensions differ.
double subspace_distance(const Matrix& a, const Matrix& b);

/// Largest column norm of (I - P) v, P the projection onto the orthonormal columns of `basis`.
double residual_outside(const Matrix& basis, const Matrix& vectors);

/// An n-tuple of D x D matrices, stacked slot after slot, each slot column-major.
Vector flatten(std::span<const Matrix> tuple);
std::vector<Matrix> unflatten(const Eigen::Ref<const Vector>& v, Eigen::Index n, Eigen::Index d);

Matrix random_matrix(Eigen::Index d, Rng& rng);
Matrix random_hermitian(Eigen::Index d, Rng& rng);
Matrix random_unitary(Eigen::Index d, Rng& rng);

/// Gram-Schmidt with one reorthogonalization pass; grows an orthonormal basis
/// one vector at a time and reports whether a candidate enlarged the span.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(Eigen::Index ambient, double rel_tol = 1e-9);

  bool try_add(const Vector& v);
  Eigen::Index size() const { return count_; }
  Eigen::Index ambient() const { return basis_.rows(); }
  Matrix basis() const { return basis_.leftCols(count_); }

 private:
  Matrix basis_;
  Eigen::Index count_ = 0;
  double rel_tol_;
};

}  // namespace freedim
