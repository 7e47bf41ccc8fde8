#include "freedim/cocycle.hpp"
#include "freedim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace freedim {

namespace {

// vec([Y, L]) = (L^T (x) I - I (x) L) vec(Y) for column-major vec.
Matrix commutator_operator(const Matrix& l) {
  const Eigen::Index d = l.rows();
  Matrix op = Matrix::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      // (L^T (x) I): block (a, b) = L(b, a) I
      op.block(a * d, b * d, d, d).diagonal().array() += l(b, a);
      // (I (x) L): block (a, a) = L
      if (a == b) op.block(a * d, a * d, d, d) -= l;
    }
  return op;
}

HsSubspace from_columns(const GnsStructure& gns, int n, Matrix columns, double rel_tol) {
  return make_hs_subspace(gns, n, columns, rel_tol);
}

}  // namespace

std::vector<Matrix> cocycle_map(std::span<const Matrix> generator_ops, const Matrix& y) {
  std::vector<Matrix> out;
  out.reserve(generator_ops.size());
  for (const auto& l : generator_ops) out.push_back(commutator(y, l));
  return out;
}

std::vector<Matrix> cocycle_map(const GnsStructure& gns, const Matrix& y) {
  return cocycle_map(gns.generator_mult(), y);
}

Matrix cocycle_matrix(std::span<const Matrix> generator_ops, Eigen::Index d) {
  const auto n = static_cast<Eigen::Index>(generator_ops.size());
  Matrix c(n * d * d, d * d);
  for (Eigen::Index j = 0; j < n; ++j)
    c.middleRows(j * d * d, d * d) = commutator_operator(generator_ops[static_cast<std::size_t>(j)]);
  return c;
}

HsSubspace compute_H0(const GnsStructure& gns, std::span<const Matrix> generator_ops) {
  // Column (k + l D) of the commutator matrix is the image of the matrix unit E_kl.
  const int n = static_cast<int>(generator_ops.size());
  return from_columns(gns, n, cocycle_matrix(generator_ops, gns.dim()), kDefaultTolerances.rank);
}

HsSubspace compute_H1(const GnsStructure& gns, std::span<const Matrix> generator_ops) {
  const Eigen::Index d = gns.dim();
  const int n = static_cast<int>(generator_ops.size());
  const cplx i_unit(0.0, 1.0);
  Matrix columns(static_cast<Eigen::Index>(n) * d * d, d * d);
  Eigen::Index col = 0;
  const auto push = [&](const Matrix& y) {
    const auto images = cocycle_map(generator_ops, y);
    columns.col(col++) = flatten(images);
  };
  for (Eigen::Index k = 0; k < d; ++k) {
    Matrix e = Matrix::Zero(d, d);
    e(k, k) = 1.0;
    push(e);
    for (Eigen::Index l = k + 1; l < d; ++l) {
      Matrix re = Matrix::Zero(d, d);
      re(k, l) = re(l, k) = 1.0;
      push(re);
      Matrix im = Matrix::Zero(d, d);
      im(k, l) = i_unit;
      im(l, k) = -i_unit;
      push(im);
    }
  }
  return from_columns(gns, n, columns, kDefaultTolerances.rank);
}

HsSubspace compute_H2(const GnsStructure& gns, std::span<const Matrix> generator_ops) {
  const Eigen::Index d = gns.dim();
  const int n = static_cast<int>(generator_ops.size());
  const Eigen::Index ambient = static_cast<Eigen::Index>(n) * d * d;
  // <[Y, L], S> = <Y, [S, L*]>, so the adjoint of the joint commutator map
  // is S -> sum_j [S_j, L_j*]; its kernel's annihilator is the range of the
  // adjoint of that map.
  Matrix adjoint_map(d * d, ambient);
  for (Eigen::Index c = 0; c < ambient; ++c) {
    Vector unit = Vector::Zero(ambient);
    unit(c) = 1.0;
    const auto slots = unflatten(unit, n, d);
    Matrix acc = Matrix::Zero(d, d);
    for (int j = 0; j < n; ++j) acc += commutator(slots[j], generator_ops[static_cast<std::size_t>(j)].adjoint());
    adjoint_map.col(c) = Eigen::Map<const Vector>(acc.data(), acc.size());
  }
  return from_columns(gns, n, adjoint_map.adjoint(), kDefaultTolerances.rank);
}

HsSubspace compute_H0(const GnsStructure& gns) { return compute_H0(gns, gns.generator_mult()); }
HsSubspace compute_H1(const GnsStructure& gns) { return compute_H1(gns, gns.generator_mult()); }
HsSubspace compute_H2(const GnsStructure& gns) { return compute_H2(gns, gns.generator_mult()); }

int commutant_dimension(std::span<const Matrix> generator_ops, Eigen::Index d) {
  if (generator_ops.empty()) return static_cast<int>(d * d);
  return static_cast<int>(null_space(cocycle_matrix(generator_ops, d), kDefaultTolerances.rank).cols());
}

DeltaReport delta_report(const GnsStructure& gns, const CentralDecomposition& cd, const Tolerances& tol) {
  if (!gns.algebra().generation.generates && !gns.algebra().subalgebra_mode)
    throw NotGenerating("delta_report requires a generating tuple");
  const auto& ops = gns.generator_mult();
  const HsSubspace h0 = compute_H0(gns, ops);
  const HsSubspace h1 = compute_H1(gns, ops);
  const HsSubspace h2 = compute_H2(gns, ops);

  const VnDimension v0 = vn_dimension(h0, cd, tol);
  const VnDimension v1 = vn_dimension(h1, cd, tol);
  const VnDimension v2 = vn_dimension(h2, cd, tol);

  DeltaReport r;
  r.dim_H0 = v0.value;
  r.dim_H1 = v1.value;
  r.dim_H2 = v2.value;
  if (r.dim_H0 > r.dim_H2 + tol.chain)
    throw ChainViolation("dim H0 = " + std::to_string(r.dim_H0) + " exceeds dim H2 = " + std::to_string(r.dim_H2));
  r.Delta = r.dim_H2;
  r.beta0 = 1.0 - r.Delta;
  r.Delta_exact = v2.exact;
  if (v2.exact) r.beta0_exact = Fraction{1, 1} + Fraction{-v2.exact->num, v2.exact->den};
  r.delta_star = r.Delta;
  r.delta_blackstar = r.Delta;
  for (int i = 0; i < cd.num_blocks(); ++i) {
    const double n = cd.sizes[i];
    r.closed_form_beta0 += cd.weights[i] * cd.weights[i] / (n * n);
    r.blocks.push_back({cd.sizes[i], cd.weights[i]});
  }
  r.multiplicities = v2.multiplicities;

  r.hilbert_dim = gns.dim();
  r.complex_dim_H0 = static_cast<int>(h0.complex_dim());
  r.complex_dim_H1 = static_cast<int>(h1.complex_dim());
  r.complex_dim_H2 = static_cast<int>(h2.complex_dim());
  r.commutant_dim = commutant_dimension(ops, gns.dim());
  r.distance_H0_H1 = subspace_distance(h0.basis, h1.basis);
  r.distance_H0_H2 = subspace_distance(h0.basis, h2.basis);
  r.distance_H1_H2 = subspace_distance(h1.basis, h2.basis);
  r.invariance_residual = std::max({h0.invariance_residual, h1.invariance_residual, h2.invariance_residual});

  r.spaces_agree = std::max({r.distance_H0_H1, r.distance_H0_H2, r.distance_H1_H2}) <= tol.chain &&
                   std::abs(r.dim_H0 - r.dim_H2) <= tol.chain && std::abs(r.dim_H1 - r.dim_H2) <= tol.chain;
  r.closed_form_agrees = std::abs(r.beta0 - r.closed_form_beta0) <= tol.chain;
  r.rank_nullity_holds = r.complex_dim_H0 + r.commutant_dim == r.hilbert_dim * r.hilbert_dim;
  return r;
}

DeltaReport delta_report(const TracialAlgebra& algebra, const Tolerances& tol) {
  const GnsStructure gns = gns_structure(algebra);
  return delta_report(gns, central_decomposition(gns), tol);
}

}  // namespace freedim
