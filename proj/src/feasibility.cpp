#include "safemerge/feasibility.hpp"

#include <cmath>
#include <stdexcept>

namespace safemerge {

void ControlBounds::validate() const {
  if (!(u_min < u_max)) {
    throw std::invalid_argument("control bounds require u_min < u_max");
  }
}

FeasibilityBounds bounds_for_pair(const PairGeometry& g, double r_safe,
                                  double eta, double dt, double theta,
                                  const ControlBounds& cb, CoefficientMode mode) {
  cb.validate();
  const PairLinearization lin = linearize_pair(g, r_safe, eta, dt, theta, mode);
  if (std::abs(lin.h) < kSingularH) {
    throw std::domain_error("feasibility bounds are singular at h = 0");
  }
  FeasibilityBounds fb;
  fb.t_term = -lin.drift + lin.chance;
  fb.m_coef = lin.a / lin.h;
  fb.n_coef = fb.t_term / lin.h;
  fb.case_sign = lin.a >= 0.0 ? +1 : -1;
  fb.h_negative = lin.h < 0.0;
  if (fb.case_sign >= 0) {
    fb.alpha_feasible = fb.m_coef * cb.u_min + fb.n_coef;
    fb.alpha_active = fb.m_coef * cb.u_max + fb.n_coef;
  } else {
    fb.alpha_feasible = fb.m_coef * cb.u_max + fb.n_coef;
    fb.alpha_active = fb.m_coef * cb.u_min + fb.n_coef;
  }
  return fb;
}

CbfActivity classify(double alpha, const FeasibilityBounds& fb) {
  if (!fb.h_negative) {
    if (alpha < fb.alpha_feasible) return CbfActivity::kInfeasible;
    if (alpha >= fb.alpha_active) return CbfActivity::kInactive;
    return CbfActivity::kActive;
  }
  // h < 0: dividing the constraint by h flipped the comparisons.
  if (alpha > fb.alpha_feasible) return CbfActivity::kInfeasible;
  if (alpha <= fb.alpha_active) return CbfActivity::kInactive;
  return CbfActivity::kActive;
}

double adapt_alpha(double alpha_nominal, std::span<const FeasibilityBounds> fbs) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const FeasibilityBounds& fb : fbs) {
    if (fb.h_negative) continue;
    worst = std::max(worst, fb.alpha_feasible);
  }
  if (worst > alpha_nominal) return worst + kAlphaMargin;
  return alpha_nominal;
}

}  // namespace safemerge
