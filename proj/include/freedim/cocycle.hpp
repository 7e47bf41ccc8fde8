#pragma once

#include "freedim/fraction.hpp"
#include "freedim/tolerances.hpp"
#include "freedim/tracial.hpp"
#include "freedim/vn_dimension.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace freedim {

/// ([Y, L_{X_1}], ..., [Y, L_{X_n}]).
std::vector<Matrix> cocycle_map(std::span<const Matrix> generator_ops, const Matrix& y);
std::vector<Matrix> cocycle_map(const GnsStructure& gns, const Matrix& y);

/// The joint commutator map Y -> ([Y, L_j])_j as an (n D^2) x D^2 matrix
/// acting on column-major vec(Y).
Matrix cocycle_matrix(std::span<const Matrix> generator_ops, Eigen::Index d);

/// Range of the joint commutator map over bounded Y (images of all matrix units).
HsSubspace compute_H0(const GnsStructure& gns, std::span<const Matrix> generator_ops);
/// Span of the images of self-adjoint Y only (Hermitian basis of B(L^2)).
HsSubspace compute_H1(const GnsStructure& gns, std::span<const Matrix> generator_ops);
/// Weak closure of the range, computed as the annihilator of the kernel of
/// the adjoint map S -> sum_j [S_j, L_j].
HsSubspace compute_H2(const GnsStructure& gns, std::span<const Matrix> generator_ops);

HsSubspace compute_H0(const GnsStructure& gns);
HsSubspace compute_H1(const GnsStructure& gns);
HsSubspace compute_H2(const GnsStructure& gns);

/// dim_C {Y : [Y, L_j] = 0 for all j}.
int commutant_dimension(std::span<const Matrix> generator_ops, Eigen::Index d);

struct BlockInfo {
  int size = 0;
  double weight = 0.0;
};

struct DeltaReport {
  double dim_H0 = 0.0;
  double dim_H1 = 0.0;
  double dim_H2 = 0.0;
  double Delta = 0.0;
  double beta0 = 0.0;
  double closed_form_beta0 = 0.0;
  /// Common value of delta* and delta-star, pinned (not computed) because
  /// dim H0 = Delta squeezes the chain dim H0 <= delta* <= delta-star <= Delta.
  double delta_star = 0.0;
  double delta_blackstar = 0.0;
  std::optional<Fraction> Delta_exact;
  std::optional<Fraction> beta0_exact;

  int complex_dim_H0 = 0;
  int complex_dim_H1 = 0;
  int complex_dim_H2 = 0;
  int commutant_dim = 0;
  int hilbert_dim = 0;
  double distance_H0_H1 = 0.0;
  double distance_H0_H2 = 0.0;
  double distance_H1_H2 = 0.0;
  double invariance_residual = 0.0;
  std::vector<BlockInfo> blocks;
  std::vector<std::vector<int>> multiplicities;

  bool spaces_agree = false;   // pairwise distances <= chain tolerance
  bool closed_form_agrees = false;
  bool rank_nullity_holds = false;
};

/// Throws ChainViolation if dim H0 exceeds dim H2 by more than tol.chain.
DeltaReport delta_report(const GnsStructure& gns, const CentralDecomposition& cd,
                         const Tolerances& tol = kDefaultTolerances);
DeltaReport delta_report(const TracialAlgebra& algebra, const Tolerances& tol = kDefaultTolerances);

}  // namespace freedim
