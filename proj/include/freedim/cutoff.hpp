#pragma once

#include "freedim/linalg.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace freedim {

/// A real function with its derivative, for functional calculus and
/// two-variable difference quotients.
struct ScalarFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// (f(s) - f(t)) / (s - t), switching to f' at the midpoint when |s - t| < 1e-8.
double difference_quotient(const ScalarFunction& f, double s, double t);

enum class CutoffShape {
  /// f(x) = x on [-R, R], sign(x) (R + 1 - exp(R - |x|)) outside. C^1 at |x| = R.
  ExponentialClamp,
  /// f' = 1 - psi(|x| - R) with psi the standard C^infinity step from 0 to 1
  /// on [0, 1]; f is C^infinity and saturates at R + 1/2.
  Smooth,
};

/// The truncation family f_R: identity on [-R, R], bounded by R + 1, and
/// 1-Lipschitz (so every difference quotient lies in [0, 1]).
class CutoffFamily {
 public:
  explicit CutoffFamily(double radius, CutoffShape shape = CutoffShape::ExponentialClamp);

  double radius() const { return radius_; }
  CutoffShape shape() const { return shape_; }
  double value(double x) const;
  double derivative(double x) const;
  double quotient(double s, double t) const;
  ScalarFunction function() const;

 private:
  double radius_;
  CutoffShape shape_;
};

double cutoff_eval(double radius, double x);
double quotient_eval(double radius, double s, double t);

/// U f(Lambda) U* for self-adjoint A. Throws NotSelfAdjoint if ||A - A*|| > 1e-10.
Matrix apply_function(const Matrix& a, const ScalarFunction& f);
Matrix apply_cutoff(const Matrix& a, double radius, CutoffShape shape = CutoffShape::ExponentialClamp);

/// Max over k, l of |([f(A), X])_kl - g(lambda_k, lambda_l) ([A, X])_kl| in
/// an eigenbasis of A.
double commutator_identity_check(const Matrix& a, const Matrix& x, const ScalarFunction& f);
double commutator_identity_check(const Matrix& a, const Matrix& x, double radius,
                                 CutoffShape shape = CutoffShape::ExponentialClamp);

struct SweepPoint {
  double radius = 0.0;
  double hs_error = 0.0;
};

/// For each R: sqrt(sum_j ||[f_R(A), X_j] - [A, X_j]||_HS^2).
std::vector<SweepPoint> convergence_sweep(const Matrix& a, std::span<const Matrix> xs, std::span<const double> radii,
                                          CutoffShape shape = CutoffShape::ExponentialClamp);

/// "R,hs_error" header followed by one row per point.
std::string sweep_csv(std::span<const SweepPoint> points);

}  // namespace freedim
