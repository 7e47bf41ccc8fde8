#include "freedim/derivation.hpp"
#include "freedim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace freedim {

namespace {

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Eigen::Ref<const Vector>& v, Eigen::Index d) {
  Matrix m(d, d);
  Eigen::Map<Vector>(m.data(), d * d) = v;
  return m;
}

}  // namespace

DerivationSpec DerivationSpec::tuple(std::vector<Matrix> targets) {
  DerivationSpec s;
  s.target_ = std::move(targets);
  return s;
}

DerivationSpec DerivationSpec::free_difference_quotient(int index) {
  DerivationSpec s;
  s.target_ = FreeDifferenceQuotient{index};
  return s;
}

DerivationSpec DerivationSpec::inner(const GnsStructure& gns, const Matrix& b) {
  std::vector<Matrix> t;
  for (const auto& l : gns.generator_mult()) t.push_back(commutator(b, l));
  return tuple(std::move(t));
}

DerivationSpec DerivationSpec::zero(const GnsStructure& gns) {
  return tuple(std::vector<Matrix>(static_cast<std::size_t>(gns.num_generators()), Matrix::Zero(gns.dim(), gns.dim())));
}

std::vector<Matrix> DerivationSpec::targets(const GnsStructure& gns) const {
  const int n = gns.num_generators();
  const int d = gns.dim();
  if (const auto* fdq = std::get_if<FreeDifferenceQuotient>(&target_)) {
    if (fdq->index < 0 || fdq->index >= n)
      throw ShapeMismatch("difference quotient index " + std::to_string(fdq->index) + " out of range");
    std::vector<Matrix> t(static_cast<std::size_t>(n), Matrix::Zero(d, d));
    t[static_cast<std::size_t>(fdq->index)] = gns.p1();
    return t;
  }
  const auto& t = std::get<std::vector<Matrix>>(target_);
  if (static_cast<int>(t.size()) != n)
    throw ShapeMismatch("derivation has " + std::to_string(t.size()) + " targets for " + std::to_string(n) +
                        " generators");
  for (const auto& m : t)
    if (m.rows() != d || m.cols() != d) throw ShapeMismatch("derivation target is not D x D");
  return t;
}

Matrix DerivationMap::apply(const Vector& v) const {
  const auto d = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(map.rows()))));
  return unvec(map * v, d);
}

DerivationMap derivation_well_defined(const GnsStructure& gns, const DerivationSpec& spec, const Tolerances& tol) {
  const int d = gns.dim();
  const auto targets = spec.targets(gns);
  const auto& gens = gns.generator_mult();
  const Vector& one = gns.trace_vector();

  struct Word {
    Matrix op;     // L_w
    Matrix deriv;  // free-algebra value d(w)
  };
  std::vector<Word> basis_words{{Matrix::Identity(d, d), Matrix::Zero(d, d)}};
  IncrementalBasis span(d);
  span.try_add(one);

  std::vector<Vector> word_coords{one};
  std::vector<Vector> word_values{Vector::Zero(static_cast<Eigen::Index>(d) * d)};
  for (std::size_t head = 0; head < basis_words.size(); ++head) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Word& w = basis_words[head];
      Word next{gens[j] * w.op, targets[j] * w.op + gens[j] * w.deriv};
      word_coords.push_back(next.op * one);
      word_values.push_back(vec(next.deriv));
      if (span.try_add(word_coords.back())) basis_words.push_back(std::move(next));
    }
  }

  const auto m = static_cast<Eigen::Index>(word_coords.size());
  Matrix w(d, m), v(static_cast<Eigen::Index>(d) * d, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    w.col(c) = word_coords[static_cast<std::size_t>(c)];
    v.col(c) = word_values[static_cast<std::size_t>(c)];
  }
  DerivationMap out;
  out.words_checked = static_cast<int>(m);
  if (span.size() < d) {
    out.defect = std::numeric_limits<double>::infinity();
    return out;
  }
  // map * w = v in the least-squares sense, i.e. w^T map^T = v^T.
  out.map = w.transpose().colPivHouseholderQr().solve(v.transpose()).transpose();
  out.defect = (out.map * w - v).norm();
  out.well_defined = out.defect <= tol.well_defined;
  return out;
}

std::optional<Vector> conjugate_variable(const GnsStructure& gns, const DerivationMap& map) {
  if (!map.well_defined) return std::nullopt;
  const int d = gns.dim();
  const Vector& one = gns.trace_vector();
  // <xi, b_k> = xi_k and <P1, S>_HS = Tr(S* P1) = conj(<S 1, 1>).
  Vector xi(d);
  for (int k = 0; k < d; ++k) xi(k) = std::conj(one.dot(unvec(map.map.col(k), d) * one));
  return xi;
}

std::optional<Vector> conjugate_variable(const GnsStructure& gns, const DerivationSpec& spec, const Tolerances& tol) {
  return conjugate_variable(gns, derivation_well_defined(gns, spec, tol));
}

Vector inner_conjugate_variable(const GnsStructure& gns, const Matrix& b) {
  return (b.adjoint() - gns.conjugate_operator(b)) * gns.trace_vector();
}

bool PhiStar::finite() const { return std::isfinite(value); }

PhiStar phi_star(const GnsStructure& gns, const Tolerances& tol) {
  PhiStar out;
  for (int j = 0; j < gns.num_generators(); ++j) {
    const auto map = derivation_well_defined(gns, DerivationSpec::free_difference_quotient(j), tol);
    out.defects.push_back(map.defect);
    const auto xi = conjugate_variable(gns, map);
    out.defined.push_back(xi.has_value());
    if (xi)
      out.value += xi->squaredNorm();
    else
      out.value = std::numeric_limits<double>::infinity();
  }
  return out;
}

double DualOperatorReport::max_residual() const {
  return std::max({residual_Y1, residual_commutators, residual_adjoint, residual_adjoint_formula, residual_bilinear});
}

DualOperatorReport construct_dual_operator(const GnsStructure& gns, const DerivationSpec& spec, const Tolerances& tol) {
  const int d = gns.dim();
  const auto map = derivation_well_defined(gns, spec, tol);
  const auto xi = conjugate_variable(gns, map);
  if (!xi)
    throw IllDefined("derivation does not descend to the algebra (defect " + std::to_string(map.defect) + ")");
  const auto targets = spec.targets(gns);
  const Vector& one = gns.trace_vector();

  DualOperatorReport r;
  r.xi = *xi;
  r.Y.resize(d, d);
  r.Y_adjoint_formula.resize(d, d);
  for (int k = 0; k < d; ++k) {
    const Matrix dk = unvec(map.map.col(k), d);
    r.Y.col(k) = dk * one;
    // The basis is self-adjoint, so Q* = Q = b_k.
    r.Y_adjoint_formula.col(k) = -dk.adjoint() * one + gns.basis_mult()[static_cast<std::size_t>(k)] * r.xi;
  }

  r.residual_Y1 = (r.Y * one).norm();
  for (std::size_t j = 0; j < targets.size(); ++j)
    r.residual_commutators =
        std::max(r.residual_commutators, (commutator(r.Y, gns.generator_mult()[j]) - targets[j]).norm());
  r.residual_adjoint = (r.Y.adjoint() * one - r.xi).norm();
  r.residual_adjoint_formula = d > 0 ? (r.Y.adjoint() - r.Y_adjoint_formula).cwiseAbs().maxCoeff() : 0.0;
  // <Y b_k, b_l> = Y_lk and <b_k, Y* b_l> = conj(Y*_kl).
  r.residual_bilinear = d > 0 ? (r.Y - r.Y_adjoint_formula.adjoint()).cwiseAbs().maxCoeff() : 0.0;

  if (r.max_residual() > tol.dual_residual)
    throw ResidualTooLarge("dual operator residual " + std::to_string(r.max_residual()) + " exceeds " +
                           std::to_string(tol.dual_residual));
  return r;
}

std::vector<Matrix> antisymmetrize(std::span<const Matrix> ys) {
  std::vector<Matrix> out;
  out.reserve(ys.size());
  for (const auto& y : ys) out.push_back((y - y.adjoint()) / 2.0);
  return out;
}

double antisymmetrization_residual(const Matrix& y, const Matrix& l) {
  const Matrix anti = (y - y.adjoint()) / 2.0;
  const Matrix c = commutator(y, l);
  return (commutator(anti, l) - (c + c.adjoint()) / 2.0).cwiseAbs().maxCoeff();
}

}  // namespace freedim
