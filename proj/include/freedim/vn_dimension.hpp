#pragma once

#include "freedim/fraction.hpp"
#include "freedim/linalg.hpp"
#include "freedim/tolerances.hpp"
#include "freedim/tracial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace freedim {

/// Minimal central projections z_i of M acting on L^2(M), with n_i and
/// alpha_i = tau(z_i). `unitary` diagonalizes all z_i at once: its columns
/// are grouped block by block, block i occupying [offsets[i], offsets[i] + n_i^2).
struct CentralDecomposition {
  std::vector<Matrix> projections;
  std::vector<int> sizes;
  std::vector<double> weights;
  Matrix unitary;
  std::vector<int> offsets;
  int center_dim = 0;

  int num_blocks() const { return static_cast<int>(sizes.size()); }
  /// max over ||sum z_i - 1||, ||z_i z_j - delta_ij z_i||, ||[z_i, L_a]||.
  double residual(const GnsStructure& gns) const;
};

/// Finds the center by solving [x, X_j] = 0, diagonalizes L_h for a random
/// self-adjoint central h and groups its eigenspaces. Retries with a fresh
/// h on an eigenvalue collision; throws CenterResolutionError after 5 retries.
CentralDecomposition central_decomposition(const GnsStructure& gns, std::uint64_t seed = 0x5eedULL);

/// A subspace of HS(L^2)^n given by orthonormal columns of length n*D^2
/// (see flatten()).
struct HsSubspace {
  int n = 0;
  int d = 0;
  Matrix basis;
  double invariance_residual = 0.0;

  Eigen::Index ambient_dim() const { return static_cast<Eigen::Index>(n) * d * d; }
  Eigen::Index complex_dim() const { return basis.cols(); }
};

/// Operators generating the commutant action T -> (R T_j)_j and (T_j R)_j.
/// For D <= 16 these are the right multiplications by every basis element;
/// above that, by the generators, which generate the same algebra.
std::vector<Matrix> commutant_action(const GnsStructure& gns);

/// Largest column residual of the moved basis. Bases with more than 256
/// columns are probed instead: the RMS residual of unit-variance Gaussian
/// combinations estimates the Frobenius residual, which bounds every column
/// from above.
double invariance_residual(const GnsStructure& gns, int n, const Matrix& orthonormal_basis);

/// Orthonormalizes `vectors` and attaches the invariance certificate.
HsSubspace make_hs_subspace(const GnsStructure& gns, int n, const Matrix& vectors, double rel_tol = 1e-9);
HsSubspace full_hs(const GnsStructure& gns, int n);
/// Smallest commutant-invariant subspace containing the given vectors.
HsSubspace bimodule_orbit(const GnsStructure& gns, int n, const Matrix& vectors);

struct VnDimension {
  double value = 0.0;
  std::optional<Fraction> exact;
  /// complex_dims[i][j] = dim_C(z_i K z_j); multiplicities = that / (n_i n_j).
  std::vector<std::vector<int>> complex_dims;
  std::vector<std::vector<int>> multiplicities;
  double integrality_defect = 0.0;
};

/// sum_{i,j} alpha_i alpha_j dim_C(z_i K z_j) / (n_i n_j)^2.
/// Throws NotInvariant or IntegralityError.
VnDimension vn_dimension(const HsSubspace& subspace, const CentralDecomposition& decomposition,
                         const Tolerances& tol = kDefaultTolerances);

}  // namespace freedim
