#pragma once

namespace freedim {

/// Central numeric thresholds. Everything that compares a residual against a
/// fixed number reads it from here so a run can be re-tuned in one place.
struct Tolerances {
  double operator_residual = 1e-10;  // identities between D x D operators
  double scalar_residual = 1e-12;    // identities between scalars
  double rank = 1e-9;                // relative singular-value cutoff
  double invariance = 1e-8;          // max distance of action(K) from K
  double well_defined = 1e-8;        // least-squares defect of a derivation
  double dual_residual = 1e-9;       // residuals of a constructed dual operator
  double integrality_slack = 0.1;    // distance of a block multiplicity from an integer
  double chain = 1e-9;               // dim H0 <= dim H2 slack

  /// Defaults, with operator_residual overridden by FREEDIM_TOL when set.
  static Tolerances from_env();
};

inline const Tolerances kDefaultTolerances{};

}  // namespace freedim
