#pragma once

#include "freedim/linalg.hpp"

#include <string>
#include <vector>

namespace freedim {

struct GenerationResult {
  int generated_dim = 0;
  bool generates = false;
};

/// A finite multi-matrix algebra M = M_{n_1} + ... + M_{n_b} with the trace
/// tau(x) = sum_i alpha_i tr_i(x_i) (tr_i normalized), together with a tuple
/// of self-adjoint elements. Elements are stored as N x N block-diagonal
/// matrices, N = sum n_i.
///
/// In subalgebra mode the tuple may generate a proper *-subalgebra; the
/// effective algebra is then that subalgebra with the restricted trace.
struct TracialAlgebra {
  std::vector<int> block_sizes;
  std::vector<double> trace_weights;
  std::vector<Matrix> generators;
  std::vector<std::string> labels;
  bool subalgebra_mode = false;
  GenerationResult generation;

  int ambient_size() const;       // N
  int ambient_dimension() const;  // sum n_i^2
  int num_generators() const { return static_cast<int>(generators.size()); }
  /// Complex dimension of the effective algebra (and of L^2).
  int dimension() const { return generation.generated_dim; }
  std::vector<int> block_offsets() const;
  /// Per-row weight alpha_i / n_i, so that tau(x) = sum_r w_r x_rr.
  RealVector row_weights() const;
  cplx trace(const Matrix& x) const;
  /// tau(a b) without forming the product.
  cplx trace_product(const Matrix& a, const Matrix& b) const;
};

struct BuildOptions {
  bool subalgebra_mode = false;
  std::vector<std::string> labels;
};

/// Validates the data and runs generation_check.
/// Throws WeightError, NotSelfAdjoint, ShapeMismatch, or NotGenerating.
TracialAlgebra build_algebra(std::vector<int> block_sizes, std::vector<double> trace_weights,
                             std::vector<Matrix> generators, const BuildOptions& options = {});

/// Span of all words in the generators (including the empty word), grown
/// breadth-first until a round adds nothing.
GenerationResult generation_check(const TracialAlgebra& algebra);

/// Linearly independent words (as N x N matrices) spanning the algebra generated by `generators`.
std::vector<Matrix> word_span(std::span<const Matrix> generators, Eigen::Index size, double rel_tol = 1e-9);

/// Coordinates of L^2(M, tau) in an orthonormal basis of self-adjoint
/// elements. Because the basis is self-adjoint, the modular conjugation
/// J(a) = a* is plain complex conjugation of coordinates.
class GnsStructure {
 public:
  GnsStructure(TracialAlgebra algebra, std::vector<Matrix> basis);

  const TracialAlgebra& algebra() const { return algebra_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int num_generators() const { return algebra_.num_generators(); }
  const std::vector<Matrix>& basis() const { return basis_; }

  /// Coordinates of the unit; unit norm because tau(1) = 1.
  const Vector& trace_vector() const { return trace_vector_; }
  const Matrix& p1() const { return p1_; }

  /// (L_a)_{kl} = <a b_l, b_k> = tau(b_k a b_l).
  Matrix left_mult(const Matrix& a) const;
  /// Right multiplication by a on L^2, i.e. J L_{a*} J.
  Matrix right_mult(const Matrix& a) const;
  Vector coords(const Matrix& a) const;
  Matrix element(const Vector& coords) const;
  /// J on vectors and J op J on operators.
  Vector conjugate(const Vector& v) const { return v.conjugate(); }
  Matrix conjugate_operator(const Matrix& op) const { return op.conjugate(); }

  /// L_{b_k} for the basis and L_{X_j} for the generators, cached.
  const std::vector<Matrix>& basis_mult() const { return basis_mult_; }
  const std::vector<Matrix>& generator_mult() const { return generator_mult_; }

  /// Largest residual over the structural identities: orthonormality,
  /// L_{ab} = L_a L_b, L_{a*} = L_a*, J^2 = 1, [J L_a J, L_b] = 0, L_a 1 = a,
  /// traciality. Used by tests and by the CLI's verbose report.
  double validate() const;

 private:
  TracialAlgebra algebra_;
  std::vector<Matrix> basis_;
  Vector trace_vector_;
  Matrix p1_;
  std::vector<Matrix> basis_mult_;
  std::vector<Matrix> generator_mult_;
};

/// Matrix-unit basis for the full block algebra; for subalgebra mode an
/// orthonormalized self-adjoint basis of the generated subalgebra.
GnsStructure gns_structure(const TracialAlgebra& algebra);

}  // namespace freedim
