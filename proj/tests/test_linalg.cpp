#include "freedim/linalg.hpp"
#include "freedim/fraction.hpp"

#include <doctest.h>

using namespace freedim;

TEST_CASE("hs inner product is Tr(T* S)") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix s = random_matrix(4, rng), t = random_matrix(4, rng);
    CHECK(std::abs(hs_inner(s, t) - (t.adjoint() * s).trace()) < 1e-12);
  }
}

TEST_CASE("numerical span and rank") {
  Rng rng(2);
  Matrix a = random_matrix(6, rng).leftCols(3);
  Matrix v(6, 5);
  v << a, a.col(0) + 2.0 * a.col(1), a.col(2) * cplx(0, 3);
  Matrix q = numerical_span(v);
  CHECK(q.cols() == 3);
  CHECK((q.adjoint() * q - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK(residual_outside(q, v) < 1e-12);
  CHECK(numerical_rank(v) == 3);
  CHECK(numerical_span(Matrix::Zero(4, 2)).cols() == 0);
}

TEST_CASE("null space is the orthogonal complement of the row space") {
  Rng rng(3);
  Matrix a = random_matrix(5, rng).topRows(2);
  Matrix k = null_space(a);
  CHECK(k.cols() == 3);
  CHECK((a * k).norm() < 1e-12);
  Matrix c = orthogonal_complement(k, 5);
  CHECK(c.cols() == 2);
  CHECK((k.adjoint() * c).norm() < 1e-12);
}

TEST_CASE("subspace distance") {
  Rng rng(4);
  Matrix q = numerical_span(random_matrix(6, rng).leftCols(3));
  Matrix u = random_unitary(3, rng);
  CHECK(subspace_distance(q, q * u) < 1e-12);
  CHECK(subspace_distance(q, q.leftCols(2)) == 1.0);
  Matrix other = orthogonal_complement(q, 6);
  CHECK(subspace_distance(q, other) > 0.99);
}

TEST_CASE("flatten and unflatten round trip") {
  Rng rng(5);
  std::vector<Matrix> tuple{random_matrix(3, rng), random_matrix(3, rng)};
  Vector v = flatten(tuple);
  CHECK(v.size() == 18);
  CHECK(v(3) == tuple[0](0, 1));
  CHECK(v(9) == tuple[1](0, 0));
  auto back = unflatten(v, 2, 3);
  CHECK((back[0] - tuple[0]).norm() == 0.0);
  CHECK((back[1] - tuple[1]).norm() == 0.0);
}

TEST_CASE("random generators have the advertised structure") {
  Rng rng(6);
  Matrix h = random_hermitian(5, rng);
  CHECK(hermitian_defect(h) < 1e-14);
  Matrix u = random_unitary(5, rng);
  CHECK((u.adjoint() * u - Matrix::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("incremental basis detects dependent vectors") {
  Rng rng(7);
  IncrementalBasis basis(4);
  Matrix a = random_matrix(4, rng);
  CHECK(basis.try_add(a.col(0)));
  CHECK(basis.try_add(a.col(1)));
  CHECK_FALSE(basis.try_add(a.col(0) * 3.0 - a.col(1)));
  CHECK(basis.try_add(a.col(2)));
  CHECK(basis.size() == 3);
  Matrix q = basis.basis();
  CHECK((q.adjoint() * q - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK_FALSE(basis.try_add(Vector::Zero(4)));
}

TEST_CASE("fractions") {
  CHECK(to_fraction(7.0 / 9.0)->str() == "7/9");
  CHECK(to_fraction(0.5 + 1e-13)->str() == "1/2");
  CHECK(to_fraction(3.0)->str() == "3");
  CHECK(to_fraction(-0.25)->str() == "-1/4");
  CHECK_FALSE(to_fraction(M_PI, 1e-15, 100).has_value());
  CHECK(normalized(6, -4) == Fraction{-3, 2});
  CHECK((Fraction{1, 3} + Fraction{1, 6}) == Fraction{1, 2});
  CHECK((Fraction{2, 3} * Fraction{3, 4}) == Fraction{1, 2});
}
