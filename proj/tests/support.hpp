#pragma once

#include "freedim/linalg.hpp"
#include "freedim/tracial.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

using freedim::cplx;
using freedim::Matrix;

inline Matrix diag(std::vector<cplx> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t k = 0; k < d.size(); ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
  return m;
}

inline Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Matrix sigma_z() { return diag({1, -1}); }

// Block-diagonal embedding of a scalar and a 2 x 2 block.
inline Matrix c_plus(cplx c, const Matrix& m2) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = c;
  m.bottomRightCorner(2, 2) = m2;
  return m;
}

inline freedim::TracialAlgebra c2() { return freedim::build_algebra({1, 1}, {0.5, 0.5}, {diag({0, 1})}); }
inline freedim::TracialAlgebra m2() { return freedim::build_algebra({2}, {1.0}, {sigma_x(), sigma_z()}); }
inline freedim::TracialAlgebra c_plus_m2() {
  return freedim::build_algebra({1, 2}, {1.0 / 3.0, 2.0 / 3.0},
                                {c_plus(1, sigma_z()), c_plus(0, sigma_x())});
}

struct NamedAlgebra {
  std::string name;
  freedim::TracialAlgebra algebra;
};

inline std::vector<NamedAlgebra> standard_algebras() {
  return {{"C2", c2()}, {"M2", m2()}, {"C+M2", c_plus_m2()}};
}

// Generating tuples of different lengths for C^2, M_2 and C + M_2.
inline std::vector<std::vector<NamedAlgebra>> alternative_tuples() {
  using freedim::build_algebra;
  std::vector<NamedAlgebra> c2s{
      {"C2 {diag(0,1)}", c2()},
      {"C2 {diag(2,-1), 1}", build_algebra({1, 1}, {0.5, 0.5}, {diag({2, -1}), diag({1, 1})})},
      {"C2 {diag(1,0), diag(0,1), diag(3,3)}",
       build_algebra({1, 1}, {0.5, 0.5}, {diag({1, 0}), diag({0, 1}), diag({3, 3})})},
  };
  std::vector<NamedAlgebra> m2s{
      {"M2 {sx, sz}", m2()},
      {"M2 {sx, sy, sz}", build_algebra({2}, {1.0}, {sigma_x(), sigma_y(), sigma_z()})},
      {"M2 {sx + sz, sy, 1, sx}",
       build_algebra({2}, {1.0}, {sigma_x() + sigma_z(), sigma_y(), Matrix::Identity(2, 2), sigma_x()})},
  };
  const double a = 1.0 / 3.0, b = 2.0 / 3.0;
  std::vector<NamedAlgebra> cm2s{
      {"C+M2 {1+sz, 0+sx}", c_plus_m2()},
      {"C+M2 {diag(2,1,-1), 0+sx, 0+sy}",
       build_algebra({1, 2}, {a, b}, {c_plus(2, sigma_z()), c_plus(0, sigma_x()), c_plus(0, sigma_y())})},
      {"C+M2 {1+0, 0+sx, 0+sz, 5+sy}",
       build_algebra({1, 2}, {a, b},
                     {c_plus(1, Matrix::Zero(2, 2)), c_plus(0, sigma_x()), c_plus(0, sigma_z()), c_plus(5, sigma_y())})},
  };
  return {c2s, m2s, cm2s};
}

// A random multi-matrix algebra with random weights and a generic
// self-adjoint generating tuple.
inline freedim::TracialAlgebra random_algebra(freedim::Rng& rng, int max_blocks = 3, int max_size = 2,
                                              int generators = 2) {
  std::uniform_int_distribution<int> nb(1, max_blocks), ns(1, max_size);
  std::uniform_real_distribution<double> w(0.2, 1.0);
  const int b = nb(rng);
  std::vector<int> sizes;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < b; ++i) {
    sizes.push_back(ns(rng));
    weights.push_back(w(rng));
    total += weights.back();
  }
  for (auto& x : weights) x /= total;
  int n = 0;
  for (int s : sizes) n += s;
  std::vector<Matrix> gens;
  for (int j = 0; j < generators; ++j) {
    Matrix g = Matrix::Zero(n, n);
    int off = 0;
    for (int s : sizes) {
      g.block(off, off, s, s) = freedim::random_hermitian(s, rng);
      off += s;
    }
    gens.push_back(g);
  }
  return freedim::build_algebra(sizes, weights, gens);
}

// coords(x P) for a random x in M and a random rank-one projection P inside
// one block; its orbit under right multiplication has dimension n_i.
inline freedim::Vector thin_vector(const freedim::GnsStructure& gns, freedim::Rng& rng) {
  const freedim::TracialAlgebra& a = gns.algebra();
  std::uniform_int_distribution<std::size_t> pick(0, a.block_sizes.size() - 1);
  const std::size_t i = pick(rng);
  const int n = a.block_sizes[i], off = a.block_offsets()[i];
  const freedim::Vector v = freedim::random_matrix(n, rng).col(0).normalized();
  Matrix p = Matrix::Zero(a.ambient_size(), a.ambient_size());
  p.block(off, off, n, n) = v * v.adjoint();
  Matrix x = Matrix::Zero(a.ambient_size(), a.ambient_size());
  int o = 0;
  for (int s : a.block_sizes) {
    x.block(o, o, s, s) = freedim::random_matrix(s, rng);
    o += s;
  }
  return gns.coords(x * p);
}

// Sums of one or two rank-one operators |xi><eta| per slot, so that orbits
// are proper subspaces of varying dimension.
inline Matrix thin_tuple_vectors(const freedim::GnsStructure& gns, int n, int count, freedim::Rng& rng) {
  std::uniform_int_distribution<int> terms(1, 2);
  Matrix v(static_cast<Eigen::Index>(n) * gns.dim() * gns.dim(), count);
  for (int c = 0; c < count; ++c) {
    std::vector<Matrix> tuple;
    for (int j = 0; j < n; ++j) {
      Matrix t = Matrix::Zero(gns.dim(), gns.dim());
      const int r = terms(rng);
      for (int q = 0; q < r; ++q) t += thin_vector(gns, rng) * thin_vector(gns, rng).adjoint();
      tuple.push_back(t);
    }
    v.col(c) = freedim::flatten(tuple);
  }
  return v;
}

}  // namespace fixtures
