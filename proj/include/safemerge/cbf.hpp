#pragma once

#include <cstdint>
#include <Eigen/Dense>

namespace safemerge {

struct SafetyParams {
  double r_safe = 8.0;  // minimum allowed pairwise distance, m
  double eta = 0.99;    // chance-constraint confidence, in (0, 1)
  double alpha = 1.0;   // CBF design parameter, >= 0
  void validate() const;
};

// Relative quantities for one ego/merging-vehicle pair: dx = x_e - x_m,
// dv = v_e - v_m, and the difference noise eps_e - eps_m.
struct PairGeometry {
  Eigen::Vector2d dx = Eigen::Vector2d::Zero();
  Eigen::Vector2d dv = Eigen::Vector2d::Zero();
  Eigen::Vector2d d_eps_mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d d_eps_cov = Eigen::Matrix2d::Zero();
};

// Scaling of the chance penalty sqrt(dx' dSigma dx).
//
// The Gaussian transform of the chance constraint yields coefficient 2 (the
// std of 2 dx'eps is 2 sqrt(dx' dSigma dx)). kDerivationExact applies it and
// is the default; it is the mode that calibrates to eta at the constraint
// boundary. kPaperCoefficient halves the penalty (coefficient 1) and is kept
// behind the --paper-coefficient CLI switch for comparison runs.
enum class CoefficientMode {
  kDerivationExact,
  kPaperCoefficient,
};

double chance_coefficient(CoefficientMode mode);

// The reduced scalar constraint a * u_e <= b on the along-lane acceleration.
struct ConstraintCoeffs {
  double a = 0.0;
  double b = 0.0;
};

// h = ||x_e - x_m||^2 - r_safe^2
double safety_value(const Eigen::Vector2d& x_e, const Eigen::Vector2d& x_m,
                    double r_safe);

// Standard normal CDF and its inverse. inv_norm_cdf is accurate to better
// than 1e-9 absolute over p in [1e-12, 1 - 1e-12]; throws std::domain_error
// outside (0, 1).
double norm_cdf(double x);
double inv_norm_cdf(double p);

// Shared pieces of the reduced constraint, b(alpha) = drift + alpha h - chance.
// feasibility builds its alpha bounds from the same linearization so the two
// modules can never disagree about the constraint.
struct PairLinearization {
  double h = 0.0;       // safety value
  double a = 0.0;       // reduced scalar coefficient (includes dt and heading)
  double drift = 0.0;   // 2 dx'(dv + d_eps_mean)
  double chance = 0.0;  // kappa * Phi^-1(eta) * sqrt(dx' dSigma dx)
};

PairLinearization linearize_pair(const PairGeometry& g, double r_safe,
                                 double eta, double dt, double theta,
                                 CoefficientMode mode);

ConstraintCoeffs build_constraint(const PairGeometry& g, const SafetyParams& p,
                                  double dt, double theta,
                                  CoefficientMode mode = CoefficientMode::kDerivationExact);

// Monte Carlo check of the probabilistic condition at a given control:
// samples d_eps ~ N(d_eps_mean, d_eps_cov) and returns the fraction of draws
// with 2 dx' d_eps >= -2 dx'(dv + u dt) - alpha h, u projected through theta.
double check_chance_satisfaction(const PairGeometry& g, const SafetyParams& p,
                                 double dt, double u_e, double theta,
                                 int n_samples, std::uint64_t seed);

}  // namespace safemerge
