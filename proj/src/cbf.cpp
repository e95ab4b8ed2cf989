#include "safemerge/cbf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "safemerge/geometry.hpp"
#include "safemerge/rng.hpp"

namespace safemerge {
namespace {

// Acklam's rational approximation to the standard normal quantile,
// refined below by one Halley step against the erfc-based CDF.
double acklam(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Inverse CDF on (0, 0.5]; the upper half is handled by symmetry so the
// refinement always works in the well-conditioned lower tail.
double inv_norm_cdf_lower(double p) {
  double x = acklam(p);
  // One Halley step: e = Phi(x) - p, u = e / phi(x).
  const double e = norm_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  x -= u / (1.0 + x * u / 2.0);
  return x;
}

}  // namespace

void SafetyParams::validate() const {
  if (!(r_safe > 0.0)) throw std::invalid_argument("r_safe must be positive");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must be in (0, 1)");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
}

double chance_coefficient(CoefficientMode mode) {
  switch (mode) {
    case CoefficientMode::kDerivationExact: return 2.0;
    case CoefficientMode::kPaperCoefficient: return 1.0;
  }
  return 2.0;
}

double safety_value(const Eigen::Vector2d& x_e, const Eigen::Vector2d& x_m,
                    double r_safe) {
  return (x_e - x_m).squaredNorm() - r_safe * r_safe;
}

double norm_cdf(double x) {
  return 0.5 * std::erfc(-x * std::numbers::inv_sqrt2);
}

double inv_norm_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("inv_norm_cdf requires p in (0, 1)");
  }
  if (p > 0.5) return -inv_norm_cdf_lower(1.0 - p);
  return inv_norm_cdf_lower(p);
}

PairLinearization linearize_pair(const PairGeometry& g, double r_safe,
                                 double eta, double dt, double theta,
                                 CoefficientMode mode) {
  PairLinearization lin;
  lin.h = g.dx.squaredNorm() - r_safe * r_safe;
  const Eigen::RowVector2d a_row = -2.0 * dt * g.dx.transpose();
  lin.a = reduce_constraint(a_row, theta);
  lin.drift = 2.0 * g.dx.dot(g.dv + g.d_eps_mean);
  const double quad = std::max(g.dx.dot(g.d_eps_cov * g.dx), 0.0);
  lin.chance = chance_coefficient(mode) * inv_norm_cdf(eta) * std::sqrt(quad);
  return lin;
}

ConstraintCoeffs build_constraint(const PairGeometry& g, const SafetyParams& p,
                                  double dt, double theta, CoefficientMode mode) {
  p.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const PairLinearization lin = linearize_pair(g, p.r_safe, p.eta, dt, theta, mode);
  return {lin.a, lin.drift + p.alpha * lin.h - lin.chance};
}

double check_chance_satisfaction(const PairGeometry& g, const SafetyParams& p,
                                 double dt, double u_e, double theta,
                                 int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const double h = g.dx.squaredNorm() - p.r_safe * p.r_safe;
  const Eigen::Vector2d u2 = project_control(theta, u_e);
  const double rhs = -2.0 * g.dx.dot(g.dv + u2 * dt) - p.alpha * h;
  const Eigen::Matrix2d chol = cholesky_psd2(g.d_eps_cov);
  long satisfied = 0;
  for (int i = 0; i < n_samples; ++i) {
    CounterRng rng(RngKey{seed, 0, static_cast<std::uint64_t>(i), 0});
    const Eigen::Vector2d d_eps = g.d_eps_mean + chol * rng.next_normal2();
    if (2.0 * g.dx.dot(d_eps) >= rhs) ++satisfied;
  }
  return static_cast<double>(satisfied) / static_cast<double>(n_samples);
}

}  // namespace safemerge
