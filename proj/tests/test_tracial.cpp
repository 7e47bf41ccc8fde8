#include "freedim/errors.hpp"
#include "freedim/tracial.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace freedim;
using namespace fixtures;

namespace {

// tau(x) straight from the definition: sum_i alpha_i Tr(x_i) / n_i.
cplx trace_oracle(const TracialAlgebra& a, const Matrix& x) {
  cplx t = 0.0;
  int off = 0;
  for (std::size_t i = 0; i < a.block_sizes.size(); ++i) {
    const int n = a.block_sizes[i];
    t += a.trace_weights[i] * x.block(off, off, n, n).trace() / static_cast<double>(n);
    off += n;
  }
  return t;
}

}  // namespace

TEST_CASE("trace matches the weighted block trace") {
  Rng rng(11);
  for (const auto& [name, a] : standard_algebras()) {
    CAPTURE(name);
    const int n = a.ambient_size();
    CHECK(std::abs(a.trace(Matrix::Identity(n, n)) - 1.0) < 1e-14);
    for (int t = 0; t < 5; ++t) {
      Matrix x = random_matrix(n, rng), y = random_matrix(n, rng);
      CHECK(std::abs(a.trace(x) - trace_oracle(a, x)) < 1e-13);
      CHECK(std::abs(a.trace_product(x, y) - trace_oracle(a, x * y)) < 1e-13);
    }
  }
}

TEST_CASE("generation check on the worked algebras") {
  CHECK(c2().dimension() == 2);
  CHECK(m2().dimension() == 4);
  CHECK(c_plus_m2().dimension() == 5);
  CHECK(word_span(std::vector<Matrix>{sigma_x()}, 2).size() == 2);
}

TEST_CASE("build_algebra rejects bad input") {
  CHECK_THROWS_AS(build_algebra({1, 1}, {0.5, 0.6}, {diag({0, 1})}), WeightError);
  CHECK_THROWS_AS(build_algebra({1, 1}, {1.5, -0.5}, {diag({0, 1})}), WeightError);
  CHECK_THROWS_AS(build_algebra({1, 1}, {1.0}, {diag({0, 1})}), ShapeMismatch);
  CHECK_THROWS_AS(build_algebra({}, {}, {}), ShapeMismatch);
  CHECK_THROWS_AS(build_algebra({2}, {1.0}, {diag({0, 1, 2})}), ShapeMismatch);
  CHECK_THROWS_AS(build_algebra({1, 1}, {0.5, 0.5}, {sigma_x()}), ShapeMismatch);
  Matrix not_sa(2, 2);
  not_sa << 0, 1, 0, 0;
  CHECK_THROWS_AS(build_algebra({2}, {1.0}, {not_sa}), NotSelfAdjoint);
  CHECK_THROWS_AS(build_algebra({2}, {1.0}, {sigma_x()}), NotGenerating);
  BuildOptions sub;
  sub.subalgebra_mode = true;
  const auto a = build_algebra({2}, {1.0}, {sigma_x()}, sub);
  CHECK(a.dimension() == 2);
  CHECK_FALSE(a.generation.generates);
}

TEST_CASE("GNS structure identities") {
  Rng rng(12);
  std::vector<TracialAlgebra> algebras;
  for (const auto& na : standard_algebras()) algebras.push_back(na.algebra);
  for (int t = 0; t < 10; ++t) algebras.push_back(random_algebra(rng));
  BuildOptions sub;
  sub.subalgebra_mode = true;
  algebras.push_back(build_algebra({3}, {1.0}, {diag({1, 2, 2})}, sub));
  for (const auto& a : algebras) {
    const GnsStructure gns = gns_structure(a);
    CHECK(gns.dim() == a.dimension());
    CHECK(gns.validate() < 1e-10);
  }
}

TEST_CASE("GNS matrices against direct products") {
  Rng rng(13);
  for (int t = 0; t < 8; ++t) {
    const TracialAlgebra a = random_algebra(rng, 3, 2, 2);
    const GnsStructure gns = gns_structure(a);
    const int d = gns.dim();
    // A random element of M and its adjoint.
    Vector c = Vector::Random(d);
    const Matrix x = gns.element(c);
    const Matrix lx = gns.left_mult(x), rx = gns.right_mult(x);
    CHECK((gns.coords(x) - c).norm() < 1e-12);
    CHECK((gns.conjugate(gns.coords(x)) - gns.coords(x.adjoint())).norm() < 1e-12);
    for (int l = 0; l < d; ++l) {
      const Matrix& b = gns.basis()[static_cast<std::size_t>(l)];
      // <b_k, b_l> = tau(b_l* b_k) computed from the definition.
      for (int k = 0; k < d; ++k) {
        const cplx gram = trace_oracle(a, gns.basis()[static_cast<std::size_t>(l)].adjoint() *
                                              gns.basis()[static_cast<std::size_t>(k)]);
        CHECK(std::abs(gram - (k == l ? 1.0 : 0.0)) < 1e-12);
      }
      Vector left = Vector::Zero(d), right = Vector::Zero(d);
      for (int k = 0; k < d; ++k) {
        left(k) = trace_oracle(a, gns.basis()[static_cast<std::size_t>(k)].adjoint() * x * b);
        right(k) = trace_oracle(a, gns.basis()[static_cast<std::size_t>(k)].adjoint() * b * x);
      }
      CHECK((lx.col(l) - left).norm() < 1e-12);
      CHECK((rx.col(l) - right).norm() < 1e-12);
    }
    CHECK((gns.trace_vector() - gns.coords(Matrix::Identity(a.ambient_size(), a.ambient_size()))).norm() < 1e-12);
    CHECK(std::abs(gns.trace_vector().norm() - 1.0) < 1e-12);
  }
}
