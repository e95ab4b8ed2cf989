#include "safemerge/dynamics.hpp"

#include <stdexcept>

namespace safemerge {

void NoiseModel::validate() const {
  if (!mean.allFinite() || !cov.allFinite()) {
    throw std::invalid_argument("noise model must be finite");
  }
  if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12) {
    throw std::invalid_argument("noise covariance must be symmetric");
  }
  // 2x2 PSD check: trace and determinant, eigenvalues >= -1e-12
  const double tr = cov(0, 0) + cov(1, 1);
  const double det = cov(0, 0) * cov(1, 1) - cov(0, 1) * cov(1, 0);
  const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
  const double lambda_min = tr / 2.0 - disc;
  if (lambda_min < -1e-12) {
    throw std::invalid_argument("noise covariance must be positive semi-definite");
  }
}

void StepParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
}

VehicleState step_stochastic(const VehicleState& s, const Eigen::Vector2d& accel,
                             const NoiseModel& noise, const StepParams& p,
                             const RngKey& key) {
  noise.validate();
  p.validate();
  CounterRng rng(key);
  const Eigen::Vector2d eps = sample_gaussian2(noise.mean, noise.cov, rng);
  return {s.position + (s.velocity + eps) * p.dt, s.velocity + accel * p.dt};
}

VehicleState step_expected(const VehicleState& s, const Eigen::Vector2d& accel,
                           const NoiseModel& noise, const StepParams& p) {
  return {s.position + (s.velocity + noise.mean) * p.dt,
          s.velocity + accel * p.dt};
}

}  // namespace safemerge
