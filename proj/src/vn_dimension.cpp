#include "freedim/vn_dimension.hpp"
#include "freedim/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace freedim {

namespace {

constexpr int kCenterRetries = 5;
constexpr Eigen::Index kExactInvarianceColumns = 256;
constexpr Eigen::Index kInvarianceProbes = 24;

struct Group {
  int first = 0;
  int count = 0;
};

// Eigenvalues arrive sorted; split wherever consecutive values differ by more than gap.
std::vector<Group> group_eigenvalues(const RealVector& values, double gap) {
  std::vector<Group> groups;
  for (int k = 0; k < values.size(); ++k) {
    if (groups.empty() || values(k) - values(k - 1) > gap)
      groups.push_back({k, 1});
    else
      ++groups.back().count;
  }
  return groups;
}

Eigen::Index rank_absolute(const Matrix& a, double cutoff) {
  if (a.size() == 0) return 0;
  const RealVector sv = singular_values(a);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

}  // namespace

double CentralDecomposition::residual(const GnsStructure& gns) const {
  const int d = gns.dim();
  double worst = 0.0;
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < projections.size(); ++i) {
    sum += projections[i];
    for (std::size_t j = 0; j < projections.size(); ++j) {
      const Matrix expect = i == j ? projections[i] : Matrix::Zero(d, d);
      worst = std::max(worst, (projections[i] * projections[j] - expect).cwiseAbs().maxCoeff());
    }
    for (const auto& l : gns.basis_mult()) worst = std::max(worst, commutator(projections[i], l).cwiseAbs().maxCoeff());
  }
  if (d > 0) worst = std::max(worst, (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
  return worst;
}

CentralDecomposition central_decomposition(const GnsStructure& gns, std::uint64_t seed) {
  const int d = gns.dim();
  const auto& gens = gns.generator_mult();
  const auto& basis_mult = gns.basis_mult();
  const Vector& one = gns.trace_vector();

  // coords([b_k, X_j]) = [L_{b_k}, L_{X_j}] 1, stacked over j.
  Matrix system(static_cast<Eigen::Index>(gens.size()) * d, d);
  for (int k = 0; k < d; ++k)
    for (std::size_t j = 0; j < gens.size(); ++j)
      system.block(static_cast<Eigen::Index>(j) * d, k, d, 1) = commutator(basis_mult[k], gens[j]) * one;
  const Matrix center = null_space(system);
  const int center_dim = static_cast<int>(center.cols());

  // Central x and x* both lie in the center, so the real and imaginary
  // coordinate parts span the self-adjoint part of Z(M) over R.
  RealMatrix parts(d, 2 * center_dim);
  parts << center.real(), center.imag();
  Eigen::JacobiSVD<RealMatrix> svd(parts, Eigen::ComputeThinU);
  const RealMatrix real_center = svd.matrixU().leftCols(center_dim);

  Rng rng(seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt <= kCenterRetries; ++attempt) {
    RealVector r(center_dim);
    for (int k = 0; k < center_dim; ++k) r(k) = normal(rng);
    const RealVector h = real_center * r;
    Matrix lh = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) lh += h(k) * basis_mult[k];

    Eigen::SelfAdjointEigenSolver<Matrix> eig(lh);
    const RealVector& values = eig.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    const auto groups = group_eigenvalues(values, 1e-7 * scale);
    if (static_cast<int>(groups.size()) != center_dim) continue;

    struct Block {
      int size;
      double weight;
      Group group;
    };
    std::vector<Block> blocks;
    bool square = true;
    for (const auto& g : groups) {
      const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(g.count))));
      if (n * n != g.count) {
        square = false;
        break;
      }
      const auto cols = eig.eigenvectors().middleCols(g.first, g.count);
      const double weight = (cols.adjoint() * one).squaredNorm();
      blocks.push_back({n, weight, g});
    }
    if (!square) continue;
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
      if (a.size != b.size) return a.size < b.size;
      return a.weight < b.weight - 1e-12;
    });

    CentralDecomposition cd;
    cd.center_dim = center_dim;
    cd.unitary.resize(d, d);
    int offset = 0;
    for (const auto& b : blocks) {
      const auto cols = eig.eigenvectors().middleCols(b.group.first, b.group.count);
      cd.unitary.middleCols(offset, b.group.count) = cols;
      cd.projections.push_back(cols * cols.adjoint());
      cd.sizes.push_back(b.size);
      cd.weights.push_back(b.weight);
      cd.offsets.push_back(offset);
      offset += b.group.count;
    }
    return cd;
  }
  throw CenterResolutionError("could not separate the " + std::to_string(center_dim) + " central blocks after " +
                              std::to_string(kCenterRetries) + " retries");
}

std::vector<Matrix> commutant_action(const GnsStructure& gns) {
  std::vector<Matrix> ops;
  if (gns.dim() <= 16) {
    for (const auto& l : gns.basis_mult()) ops.push_back(gns.conjugate_operator(l));
  } else {
    ops.push_back(Matrix::Identity(gns.dim(), gns.dim()));
    for (const auto& l : gns.generator_mult()) ops.push_back(gns.conjugate_operator(l));
  }
  return ops;
}

double invariance_residual(const GnsStructure& gns, int n, const Matrix& basis) {
  if (basis.cols() == 0) return 0.0;
  const Eigen::Index d = gns.dim();
  const Eigen::Index dd = d * d;
  const bool exact = basis.cols() <= kExactInvarianceColumns;
  Matrix probes;
  if (!exact) {
    Rng rng(0x1f2e3d4c);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix g(basis.cols(), kInvarianceProbes);
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = cplx(normal(rng), normal(rng));
    probes = basis * g;
  }
  const Matrix& source = exact ? basis : probes;
  double worst = 0.0;
  Matrix moved(source.rows(), source.cols());
  for (const auto& r : commutant_action(gns)) {
    for (int side = 0; side < 2; ++side) {
      for (Eigen::Index c = 0; c < source.cols(); ++c) {
        for (int j = 0; j < n; ++j) {
          Eigen::Map<const Matrix> slot(source.col(c).data() + j * dd, d, d);
          Eigen::Map<Matrix> out(moved.col(c).data() + j * dd, d, d);
          if (side == 0)
            out.noalias() = r * slot;
          else
            out.noalias() = slot * r;
        }
      }
      if (exact) {
        worst = std::max(worst, residual_outside(basis, moved));
      } else {
        const Matrix rest = moved - basis * (basis.adjoint() * moved);
        worst = std::max(worst, rest.norm() / std::sqrt(static_cast<double>(source.cols())));
      }
    }
  }
  return worst;
}

HsSubspace make_hs_subspace(const GnsStructure& gns, int n, const Matrix& vectors, double rel_tol) {
  HsSubspace k;
  k.n = n;
  k.d = gns.dim();
  k.basis = numerical_span(vectors, rel_tol);
  k.invariance_residual = invariance_residual(gns, n, k.basis);
  return k;
}

HsSubspace full_hs(const GnsStructure& gns, int n) {
  HsSubspace k;
  k.n = n;
  k.d = gns.dim();
  k.basis = Matrix::Identity(k.ambient_dim(), k.ambient_dim());
  k.invariance_residual = 0.0;
  return k;
}

HsSubspace bimodule_orbit(const GnsStructure& gns, int n, const Matrix& vectors) {
  const Eigen::Index d = gns.dim();
  const Eigen::Index dd = d * d;
  std::vector<Matrix> rights;
  for (const auto& l : gns.basis_mult()) rights.push_back(gns.conjugate_operator(l));
  const auto count = static_cast<Eigen::Index>(rights.size());
  Matrix orbit(vectors.rows(), vectors.cols() * count * count);
  Eigen::Index col = 0;
  for (Eigen::Index v = 0; v < vectors.cols(); ++v)
    for (const auto& a : rights)
      for (const auto& b : rights) {
        for (int j = 0; j < n; ++j) {
          Eigen::Map<const Matrix> slot(vectors.col(v).data() + j * dd, d, d);
          Eigen::Map<Matrix>(orbit.col(col).data() + j * dd, d, d).noalias() = a * slot * b;
        }
        ++col;
      }
  return make_hs_subspace(gns, n, orbit);
}

VnDimension vn_dimension(const HsSubspace& subspace, const CentralDecomposition& cd, const Tolerances& tol) {
  if (!(subspace.invariance_residual <= tol.invariance))
    throw NotInvariant("invariance residual " + std::to_string(subspace.invariance_residual) + " exceeds " +
                       std::to_string(tol.invariance));
  const Eigen::Index d = subspace.d;
  const Eigen::Index dd = d * d;
  const int n = subspace.n;
  const Eigen::Index k = subspace.complex_dim();
  const Matrix& u = cd.unitary;

  // Rotate every slot into the basis where all z_i are coordinate projections.
  Matrix rotated(subspace.ambient_dim(), k);
  for (Eigen::Index c = 0; c < k; ++c)
    for (int j = 0; j < n; ++j) {
      Eigen::Map<const Matrix> slot(subspace.basis.col(c).data() + j * dd, d, d);
      Eigen::Map<Matrix>(rotated.col(c).data() + j * dd, d, d).noalias() = u.adjoint() * slot * u;
    }

  const int b = cd.num_blocks();
  VnDimension out;
  out.complex_dims.assign(b, std::vector<int>(b, 0));
  out.multiplicities.assign(b, std::vector<int>(b, 0));
  std::optional<Fraction> exact = Fraction{0, 1};
  std::vector<std::optional<Fraction>> weights;
  for (double w : cd.weights) weights.push_back(to_fraction(w, 1e-12));

  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < b; ++j) {
      const int ri = cd.sizes[i] * cd.sizes[i];
      const int rj = cd.sizes[j] * cd.sizes[j];
      Matrix block(static_cast<Eigen::Index>(n) * ri * rj, k);
      for (Eigen::Index c = 0; c < k; ++c)
        for (int s = 0; s < n; ++s) {
          Eigen::Map<const Matrix> slot(rotated.col(c).data() + s * dd, d, d);
          const Matrix piece = slot.block(cd.offsets[i], cd.offsets[j], ri, rj);
          block.block(static_cast<Eigen::Index>(s) * ri * rj, c, ri * rj, 1) =
              Eigen::Map<const Vector>(piece.data(), piece.size());
        }
      // z_i K z_j sits inside K, so the compression of an orthonormal basis
      // has singular values 0 or 1 and its squared norm is the dimension.
      const auto rank = static_cast<int>(rank_absolute(block, tol.rank));
      const double trace = block.squaredNorm();
      const int unit = cd.sizes[i] * cd.sizes[j];
      const double mult = trace / unit;
      const double defect = std::abs(mult - std::round(mult));
      out.integrality_defect = std::max(out.integrality_defect, defect);
      if (defect > tol.integrality_slack || rank % unit != 0 || rank / unit != std::lround(mult))
        throw IntegralityError("block (" + std::to_string(i) + "," + std::to_string(j) + ") has complex dimension " +
                               std::to_string(rank) + " (trace " + std::to_string(trace) +
                               "), not a multiple of " + std::to_string(unit));
      out.complex_dims[i][j] = rank;
      out.multiplicities[i][j] = rank / unit;
      out.value += cd.weights[i] * cd.weights[j] * (rank / unit) / static_cast<double>(unit);
      if (exact && weights[i] && weights[j])
        exact = *exact + *weights[i] * *weights[j] * Fraction{rank / unit, unit};
      else
        exact.reset();
    }
  }
  out.exact = exact ? exact : to_fraction(out.value);
  return out;
}

}  // namespace freedim
