#pragma once

#include "freedim/tolerances.hpp"
#include "freedim/tracial.hpp"

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace freedim {

/// The free difference quotient in slot j: T = (0, ..., P1, ..., 0).
struct FreeDifferenceQuotient {
  int index = 0;
};

/// Prescribed values T_j = d(X_j) in HS(L^2) of a derivation on the
/// polynomial algebra, extended by the Leibniz rule
/// d(PQ) = d(P) L_Q + L_P d(Q).
class DerivationSpec {
 public:
  static DerivationSpec tuple(std::vector<Matrix> targets);
  static DerivationSpec free_difference_quotient(int index);
  /// T_j = [B, L_{X_j}].
  static DerivationSpec inner(const GnsStructure& gns, const Matrix& b);
  static DerivationSpec zero(const GnsStructure& gns);

  std::vector<Matrix> targets(const GnsStructure& gns) const;
  bool is_free_difference_quotient() const { return std::holds_alternative<FreeDifferenceQuotient>(target_); }

 private:
  std::variant<std::vector<Matrix>, FreeDifferenceQuotient> target_;
};

/// Result of pushing the free-algebra assignment through the relations of M.
struct DerivationMap {
  bool well_defined = false;
  double defect = 0.0;
  /// D^2 x D; column k is vec(d(b_k)) for the GNS basis element b_k.
  Matrix map;
  int words_checked = 0;

  /// d applied to the vector with coordinates v, as a D x D operator.
  Matrix apply(const Vector& v) const;
};

/// Evaluates the Leibniz assignment on a breadth-first spanning set of words
/// and on every one-letter extension of it, then fits a linear map on L^2 by
/// least squares. The extension equations generate all relations of M, so
/// a zero defect means the derivation descends to M.
DerivationMap derivation_well_defined(const GnsStructure& gns, const DerivationSpec& spec,
                                      const Tolerances& tol = kDefaultTolerances);

/// The vector xi with <xi, Q 1> = <P1, d(Q)>_HS for all Q, or nullopt when
/// the derivation does not descend to M.
std::optional<Vector> conjugate_variable(const GnsStructure& gns, const DerivationMap& map);
std::optional<Vector> conjugate_variable(const GnsStructure& gns, const DerivationSpec& spec,
                                         const Tolerances& tol = kDefaultTolerances);

/// Conjugate variable of the inner derivation Q -> [B, Q]: (B* - J B J) 1.
Vector inner_conjugate_variable(const GnsStructure& gns, const Matrix& b);

struct PhiStar {
  /// sum_j ||xi_j||^2, or +infinity when some difference quotient does not descend.
  double value = 0.0;
  std::vector<double> defects;
  std::vector<bool> defined;

  bool finite() const;
};

PhiStar phi_star(const GnsStructure& gns, const Tolerances& tol = kDefaultTolerances);

struct DualOperatorReport {
  Matrix Y;
  Vector xi;
  /// Y* assembled from Y*(Q 1) = -(d(Q*))* 1 + Q xi.
  Matrix Y_adjoint_formula;
  double residual_Y1 = 0.0;
  double residual_commutators = 0.0;
  double residual_adjoint = 0.0;          // ||Y* 1 - xi||
  double residual_adjoint_formula = 0.0;  // ||Y* - Y_adjoint_formula||
  double residual_bilinear = 0.0;         // max |<Y Q1, R1> - <Q1, Y* R1>| over basis pairs

  double max_residual() const;
};

/// Builds Y with Y 1 = 0 and Y (Q 1) = d(Q) 1, so [Y, L_{X_j}] = T_j.
/// Throws IllDefined when the derivation does not descend, ResidualTooLarge
/// when any residual exceeds tol.dual_residual.
DualOperatorReport construct_dual_operator(const GnsStructure& gns, const DerivationSpec& spec,
                                           const Tolerances& tol = kDefaultTolerances);

/// (Y - Y*) / 2 for each operator.
std::vector<Matrix> antisymmetrize(std::span<const Matrix> ys);

/// || [(Y - Y*)/2, L] - ([Y, L] + [Y, L]*)/2 ||, zero whenever L is self-adjoint.
double antisymmetrization_residual(const Matrix& y, const Matrix& l);

}  // namespace freedim
