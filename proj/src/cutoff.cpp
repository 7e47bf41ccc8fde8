#include "freedim/cutoff.hpp"
#include "freedim/errors.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace freedim {

namespace {

constexpr double kDiagonalSwitch = 1e-8;
constexpr double kSelfAdjointTol = 1e-10;

// Smooth step: 0 for u <= 0, 1 for u >= 1, C^infinity, psi(u) + psi(1 - u) = 1.
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

// int_0^u (1 - psi); equals 1/2 for u >= 1 by the symmetry of psi.
double smooth_excess(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 0.5;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [](double s) { return 1.0 - smooth_step(s); }, 0.0, u, 8, 1e-14);
}

}  // namespace

double difference_quotient(const ScalarFunction& f, double s, double t) {
  if (std::abs(s - t) < kDiagonalSwitch) return f.derivative(0.5 * (s + t));
  return (f.value(s) - f.value(t)) / (s - t);
}

CutoffFamily::CutoffFamily(double radius, CutoffShape shape) : radius_(radius), shape_(shape) {
  if (!(radius > 0.0)) throw std::invalid_argument("cutoff radius must be positive");
}

double CutoffFamily::value(double x) const {
  const double ax = std::abs(x);
  if (ax <= radius_) return x;
  const double sign = x < 0.0 ? -1.0 : 1.0;
  if (shape_ == CutoffShape::ExponentialClamp) return sign * (radius_ + 1.0 - std::exp(radius_ - ax));
  return sign * (radius_ + smooth_excess(ax - radius_));
}

double CutoffFamily::derivative(double x) const {
  const double ax = std::abs(x);
  if (ax <= radius_) return 1.0;
  if (shape_ == CutoffShape::ExponentialClamp) return std::exp(radius_ - ax);
  return 1.0 - smooth_step(ax - radius_);
}

double CutoffFamily::quotient(double s, double t) const { return difference_quotient(function(), s, t); }

ScalarFunction CutoffFamily::function() const {
  const CutoffFamily self = *this;
  return {[self](double x) { return self.value(x); }, [self](double x) { return self.derivative(x); }};
}

double cutoff_eval(double radius, double x) { return CutoffFamily(radius).value(x); }
double quotient_eval(double radius, double s, double t) { return CutoffFamily(radius).quotient(s, t); }

Matrix apply_function(const Matrix& a, const ScalarFunction& f) {
  if (hermitian_defect(a) > kSelfAdjointTol) throw NotSelfAdjoint("functional calculus needs a self-adjoint matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  RealVector fv(eig.eigenvalues().size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) fv(k) = f.value(eig.eigenvalues()(k));
  const Matrix& u = eig.eigenvectors();
  return u * fv.cast<cplx>().asDiagonal() * u.adjoint();
}

Matrix apply_cutoff(const Matrix& a, double radius, CutoffShape shape) {
  return apply_function(a, CutoffFamily(radius, shape).function());
}

double commutator_identity_check(const Matrix& a, const Matrix& x, const ScalarFunction& f) {
  if (hermitian_defect(a) > kSelfAdjointTol) throw NotSelfAdjoint("commutator identity needs a self-adjoint A");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  const Matrix& u = eig.eigenvectors();
  const RealVector& lambda = eig.eigenvalues();
  const Matrix lhs = u.adjoint() * commutator(apply_function(a, f), x) * u;
  const Matrix rhs = u.adjoint() * commutator(a, x) * u;
  double worst = 0.0;
  for (Eigen::Index l = 0; l < lhs.cols(); ++l)
    for (Eigen::Index k = 0; k < lhs.rows(); ++k)
      worst = std::max(worst, std::abs(lhs(k, l) - difference_quotient(f, lambda(k), lambda(l)) * rhs(k, l)));
  return worst;
}

double commutator_identity_check(const Matrix& a, const Matrix& x, double radius, CutoffShape shape) {
  return commutator_identity_check(a, x, CutoffFamily(radius, shape).function());
}

std::vector<SweepPoint> convergence_sweep(const Matrix& a, std::span<const Matrix> xs, std::span<const double> radii,
                                          CutoffShape shape) {
  if (hermitian_defect(a) > kSelfAdjointTol) throw NotSelfAdjoint("cutoff sweep needs a self-adjoint A");
  // In an eigenbasis of A, [f(A), X] - [A, X] = [diag(f(lambda) - lambda), U* X U],
  // and the Hilbert-Schmidt norm is unitarily invariant.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  const Matrix& u = eig.eigenvectors();
  const RealVector& lambda = eig.eigenvalues();
  std::vector<Matrix> rotated;
  for (const auto& x : xs) rotated.push_back(u.adjoint() * x * u);
  std::vector<SweepPoint> points;
  for (double r : radii) {
    const CutoffFamily f(r, shape);
    RealVector excess(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) excess(k) = f.value(lambda(k)) - lambda(k);
    double sq = 0.0;
    for (const auto& x : rotated)
      for (Eigen::Index l = 0; l < x.cols(); ++l)
        for (Eigen::Index k = 0; k < x.rows(); ++k) sq += std::norm((excess(k) - excess(l)) * x(k, l));
    points.push_back({r, std::sqrt(sq)});
  }
  return points;
}

std::string sweep_csv(std::span<const SweepPoint> points) {
  std::string out = "R,hs_error\n";
  char line[96];
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", p.radius, p.hs_error);
    out += line;
  }
  return out;
}

}  // namespace freedim
