#pragma once

#include <span>

#include "safemerge/cbf.hpp"

namespace safemerge {

struct ControlBounds {
  double u_min = -5.0;  // m/s^2
  double u_max = 3.0;
  void validate() const;
};

// Boundary values of alpha for one pair against a boxed control set.
//
// With b(alpha) = alpha h - t_term and the constraint a u <= b(alpha):
//   alpha_feasible  - alpha at which the constraint's boundary meets the box
//                     corner that keeps exactly one feasible point;
//   alpha_active    - alpha at which the whole box first satisfies it.
// For h > 0 both act as lower thresholds on alpha; for h < 0 (safety already
// violated) the division flips them into upper thresholds and h_negative is
// set.
struct FeasibilityBounds {
  double m_coef = 0.0;   // a / h
  double n_coef = 0.0;   // t_term / h
  double t_term = 0.0;   // -drift + chance
  double alpha_feasible = 0.0;
  double alpha_active = 0.0;
  int case_sign = +1;    // sign of the reduced coefficient a (>= 0 -> +1)
  bool h_negative = false;
};

enum class CbfActivity { kInactive, kActive, kInfeasible };

// Throws std::domain_error when |h| < 1e-9 (the bounds divide by h); callers
// fall back to the raw constraint, whose feasibility no longer depends on
// alpha there.
FeasibilityBounds bounds_for_pair(const PairGeometry& g, double r_safe,
                                  double eta, double dt, double theta,
                                  const ControlBounds& cb,
                                  CoefficientMode mode = CoefficientMode::kDerivationExact);

// Classification of the constraint against the box at a given alpha.
CbfActivity classify(double alpha, const FeasibilityBounds& fb);

// Smallest-deviation alpha that is at least alpha_nominal and feasible for
// every pair: max(alpha_nominal, max_m alpha_feasible^m), with a small margin
// added when a pair's bound is the binding one. Pairs with h < 0 carry upper
// (not lower) thresholds and do not contribute to the max.
double adapt_alpha(double alpha_nominal, std::span<const FeasibilityBounds> fbs);

inline constexpr double kAlphaMargin = 1e-9;
inline constexpr double kSingularH = 1e-9;

}  // namespace safemerge
