#pragma once

#include <Eigen/Dense>

#include "safemerge/rng.hpp"

namespace safemerge {

struct VehicleState {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // m
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  // m/s
};

// Gaussian motion noise entering the position channel of the double
// integrator: x' = x + (v + eps) dt with eps ~ N(mean, cov).
struct NoiseModel {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();   // m/s
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();    // m^2/s^2
  void validate() const;  // throws std::invalid_argument on asymmetry / non-PSD
};

struct StepParams {
  double dt = 0.1;  // s
  void validate() const;
};

// One Euler step with noise sampled from the stream identified by `key`.
// Deterministic given the key.
VehicleState step_stochastic(const VehicleState& s, const Eigen::Vector2d& accel,
                             const NoiseModel& noise, const StepParams& p,
                             const RngKey& key);

// Same update with the noise replaced by its mean; used for look-ahead.
VehicleState step_expected(const VehicleState& s, const Eigen::Vector2d& accel,
                           const NoiseModel& noise, const StepParams& p);

}  // namespace safemerge
