#pragma once

#include <cstdint>
#include <Eigen/Dense>

namespace safemerge {

// Stream key for the counter-based generator. Each (seed, trial, step,
// vehicle) tuple opens an independent stream, so trials can run in any order
// (or in parallel) and still draw identical noise.
struct RngKey {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t step = 0;
  std::uint64_t vehicle = 0;
};

class CounterRng {
 public:
  explicit CounterRng(const RngKey& key);

  std::uint64_t next_u64();
  double next_unit();              // uniform on (0, 1), never exactly 0 or 1
  double uniform(double lo, double hi);
  Eigen::Vector2d next_normal2();  // two independent standard normals

 private:
  std::uint64_t state_;
};

// Lower-triangular factor L with L L^T = cov for a symmetric PSD 2x2 matrix.
// Tolerates semidefinite inputs (zero pivots).
Eigen::Matrix2d cholesky_psd2(const Eigen::Matrix2d& cov);

Eigen::Vector2d sample_gaussian2(const Eigen::Vector2d& mean,
                                 const Eigen::Matrix2d& cov, CounterRng& rng);

}  // namespace safemerge
