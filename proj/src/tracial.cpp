#include "freedim/tracial.hpp"
#include "freedim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace freedim {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kSelfAdjointTol = 1e-12;

Vector as_vector(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

void check_block_diagonal(const Matrix& x, const std::vector<int>& offsets, const std::vector<int>& sizes,
                          std::size_t which) {
  const int n = static_cast<int>(x.rows());
  std::vector<int> block_of(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (int r = 0; r < sizes[b]; ++r) block_of[static_cast<std::size_t>(offsets[b] + r)] = static_cast<int>(b);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (block_of[static_cast<std::size_t>(i)] != block_of[static_cast<std::size_t>(j)] &&
          std::abs(x(i, j)) > kSelfAdjointTol)
        throw ShapeMismatch("generator " + std::to_string(which) + " has an entry outside the diagonal blocks");
}

std::vector<Matrix> matrix_unit_basis(const TracialAlgebra& algebra) {
  const int size = algebra.ambient_size();
  const auto offsets = algebra.block_offsets();
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(algebra.ambient_dimension()));
  const cplx i_unit(0.0, 1.0);
  for (std::size_t b = 0; b < algebra.block_sizes.size(); ++b) {
    const double n = algebra.block_sizes[b];
    const double alpha = algebra.trace_weights[b];
    const int off = offsets[b];
    const double diag_scale = std::sqrt(n / alpha);
    const double pair_scale = std::sqrt(n / (2.0 * alpha));
    for (int k = 0; k < algebra.block_sizes[b]; ++k) {
      Matrix e = Matrix::Zero(size, size);
      e(off + k, off + k) = diag_scale;
      basis.push_back(std::move(e));
    }
    for (int k = 0; k < algebra.block_sizes[b]; ++k) {
      for (int l = k + 1; l < algebra.block_sizes[b]; ++l) {
        Matrix re = Matrix::Zero(size, size);
        re(off + k, off + l) = pair_scale;
        re(off + l, off + k) = pair_scale;
        Matrix im = Matrix::Zero(size, size);
        im(off + k, off + l) = pair_scale * i_unit;
        im(off + l, off + k) = -pair_scale * i_unit;
        basis.push_back(std::move(re));
        basis.push_back(std::move(im));
      }
    }
  }
  return basis;
}

// Orthonormal self-adjoint basis of the *-algebra generated by the tuple.
// For self-adjoint a, b the inner product tau(b a) is real, so a real
// Gram-Schmidt over the Hermitian and anti-Hermitian parts of the spanning
// words suffices.
std::vector<Matrix> subalgebra_basis(const TracialAlgebra& algebra) {
  const auto words = word_span(algebra.generators, algebra.ambient_size());
  std::vector<Matrix> candidates;
  candidates.reserve(2 * words.size());
  for (const auto& w : words) {
    candidates.push_back((w + w.adjoint()) / 2.0);
    candidates.push_back((w - w.adjoint()) / cplx(0.0, 2.0));
  }
  std::vector<Matrix> basis;
  const auto target = static_cast<std::size_t>(algebra.generation.generated_dim);
  for (auto& c : candidates) {
    if (basis.size() == target) break;
    const double before = std::sqrt(std::max(0.0, algebra.trace_product(c, c).real()));
    if (before < 1e-13) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) c -= algebra.trace_product(b, c).real() * b;
    const double after = std::sqrt(std::max(0.0, algebra.trace_product(c, c).real()));
    if (after <= 1e-9 * before) continue;
    basis.push_back(c / after);
  }
  if (basis.size() != target)
    throw NotGenerating("could not orthonormalize the generated subalgebra (got " + std::to_string(basis.size()) +
                        " of " + std::to_string(target) + " elements)");
  return basis;
}

}  // namespace

int TracialAlgebra::ambient_size() const { return std::accumulate(block_sizes.begin(), block_sizes.end(), 0); }

int TracialAlgebra::ambient_dimension() const {
  int d = 0;
  for (int n : block_sizes) d += n * n;
  return d;
}

std::vector<int> TracialAlgebra::block_offsets() const {
  std::vector<int> offsets(block_sizes.size(), 0);
  for (std::size_t b = 1; b < block_sizes.size(); ++b) offsets[b] = offsets[b - 1] + block_sizes[b - 1];
  return offsets;
}

RealVector TracialAlgebra::row_weights() const {
  RealVector w(ambient_size());
  const auto offsets = block_offsets();
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    w.segment(offsets[b], block_sizes[b]).setConstant(trace_weights[b] / block_sizes[b]);
  return w;
}

cplx TracialAlgebra::trace(const Matrix& x) const {
  return (row_weights().cast<cplx>().array() * x.diagonal().array()).sum();
}

cplx TracialAlgebra::trace_product(const Matrix& a, const Matrix& b) const {
  // tau(ab) = sum_r w_r sum_s a_rs b_sr
  const RealVector w = row_weights();
  cplx s = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) s += w(r) * a.row(r).transpose().cwiseProduct(b.col(r)).sum();
  return s;
}

std::vector<Matrix> word_span(std::span<const Matrix> generators, Eigen::Index size, double rel_tol) {
  IncrementalBasis span(size * size, rel_tol);
  std::vector<Matrix> words;
  const Matrix one = Matrix::Identity(size, size);
  span.try_add(as_vector(one));
  words.push_back(one);
  // Breadth-first: each accepted word is extended once by every generator.
  for (std::size_t head = 0; head < words.size(); ++head) {
    for (const auto& x : generators) {
      Matrix candidate = x * words[head];
      if (span.try_add(as_vector(candidate))) words.push_back(std::move(candidate));
    }
  }
  return words;
}

GenerationResult generation_check(const TracialAlgebra& algebra) {
  const auto words = word_span(algebra.generators, algebra.ambient_size());
  GenerationResult result;
  result.generated_dim = static_cast<int>(words.size());
  result.generates = result.generated_dim == algebra.ambient_dimension();
  return result;
}

TracialAlgebra build_algebra(std::vector<int> block_sizes, std::vector<double> trace_weights,
                             std::vector<Matrix> generators, const BuildOptions& options) {
  if (block_sizes.empty()) throw ShapeMismatch("at least one block is required");
  if (block_sizes.size() != trace_weights.size())
    throw ShapeMismatch("got " + std::to_string(block_sizes.size()) + " blocks but " +
                        std::to_string(trace_weights.size()) + " trace weights");
  for (int n : block_sizes)
    if (n <= 0) throw ShapeMismatch("block sizes must be positive");
  double total = 0.0;
  for (double a : trace_weights) {
    if (!(a > 0.0)) throw WeightError("trace weights must be positive");
    total += a;
  }
  if (std::abs(total - 1.0) > kWeightTol) throw WeightError("trace weights sum to " + std::to_string(total) + ", not 1");
  if (!options.labels.empty() && options.labels.size() != generators.size())
    throw ShapeMismatch("label count does not match generator count");

  TracialAlgebra algebra;
  algebra.block_sizes = std::move(block_sizes);
  algebra.trace_weights = std::move(trace_weights);
  algebra.labels = options.labels;
  algebra.subalgebra_mode = options.subalgebra_mode;

  const int size = algebra.ambient_size();
  const auto offsets = algebra.block_offsets();
  for (std::size_t j = 0; j < generators.size(); ++j) {
    const auto& x = generators[j];
    if (x.rows() != size || x.cols() != size)
      throw ShapeMismatch("generator " + std::to_string(j) + " is " + std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()) + ", expected " + std::to_string(size) + "x" +
                          std::to_string(size));
    check_block_diagonal(x, offsets, algebra.block_sizes, j);
    if (hermitian_defect(x) > kSelfAdjointTol) throw NotSelfAdjoint("generator " + std::to_string(j));
  }
  algebra.generators = std::move(generators);
  algebra.generation = generation_check(algebra);
  if (!algebra.generation.generates && !algebra.subalgebra_mode)
    throw NotGenerating("generators span a " + std::to_string(algebra.generation.generated_dim) +
                        "-dimensional subalgebra of a " + std::to_string(algebra.ambient_dimension()) +
                        "-dimensional algebra");
  return algebra;
}

GnsStructure::GnsStructure(TracialAlgebra algebra, std::vector<Matrix> basis)
    : algebra_(std::move(algebra)), basis_(std::move(basis)) {
  const int size = algebra_.ambient_size();
  trace_vector_ = coords(Matrix::Identity(size, size));
  p1_ = trace_vector_ * trace_vector_.adjoint();
  basis_mult_.reserve(basis_.size());
  for (const auto& b : basis_) basis_mult_.push_back(left_mult(b));
  generator_mult_.reserve(algebra_.generators.size());
  for (const auto& x : algebra_.generators) generator_mult_.push_back(left_mult(x));
}

Vector GnsStructure::coords(const Matrix& a) const {
  Vector c(dim());
  for (int k = 0; k < dim(); ++k) c(k) = algebra_.trace_product(basis_[static_cast<std::size_t>(k)], a);
  return c;
}

Matrix GnsStructure::element(const Vector& c) const {
  const int size = algebra_.ambient_size();
  Matrix a = Matrix::Zero(size, size);
  for (int k = 0; k < dim(); ++k) a += c(k) * basis_[static_cast<std::size_t>(k)];
  return a;
}

Matrix GnsStructure::left_mult(const Matrix& a) const {
  Matrix l(dim(), dim());
  for (int col = 0; col < dim(); ++col) l.col(col) = coords(a * basis_[static_cast<std::size_t>(col)]);
  return l;
}

Matrix GnsStructure::right_mult(const Matrix& a) const { return left_mult(a.adjoint()).conjugate(); }

double GnsStructure::validate() const {
  double worst = 0.0;
  const auto bump = [&worst](double r) { worst = std::max(worst, r); };
  const int d = dim();
  const Matrix id = Matrix::Identity(d, d);

  Matrix gram(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) gram(k, l) = algebra_.trace_product(basis_[k], basis_[l]);
  bump((gram - id).cwiseAbs().maxCoeff());
  bump(std::abs(trace_vector_.norm() - 1.0));

  for (int k = 0; k < d; ++k) {
    const auto& b = basis_[static_cast<std::size_t>(k)];
    const auto& lb = basis_mult_[static_cast<std::size_t>(k)];
    bump(hermitian_defect(lb));                                  // L_{b*} = L_b*
    bump((lb * trace_vector_ - coords(b)).cwiseAbs().maxCoeff());  // cyclicity
    for (std::size_t j = 0; j < generator_mult_.size(); ++j) {
      const auto& x = algebra_.generators[j];
      const auto& lx = generator_mult_[j];
      bump((left_mult(x * b) - lx * lb).cwiseAbs().maxCoeff());
      bump(commutator(conjugate_operator(lb), lx).cwiseAbs().maxCoeff());
    }
    for (int l = 0; l < d; ++l)
      bump(std::abs(algebra_.trace_product(b, basis_[l]) - algebra_.trace_product(basis_[l], b)));
  }
  if (d > 0) bump((conjugate_operator(conjugate_operator(p1_)) - p1_).cwiseAbs().maxCoeff());
  return worst;
}

GnsStructure gns_structure(const TracialAlgebra& algebra) {
  if (algebra.generation.generates) return GnsStructure(algebra, matrix_unit_basis(algebra));
  return GnsStructure(algebra, subalgebra_basis(algebra));
}

}  // namespace freedim
