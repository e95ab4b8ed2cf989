#pragma once

#include <vector>
#include <Eigen/Dense>

namespace safemerge {

struct Pose {
  Eigen::Vector2d position;
  double theta;  // lane tangent angle, radians
};

// Piecewise-linear lane in the plane. Arc length starts at 0 at the first
// waypoint. The merge point must lie on the polyline (within 1e-6 m).
class LanePath {
 public:
  LanePath(std::vector<Eigen::Vector2d> waypoints, Eigen::Vector2d merge_point);

  const std::vector<Eigen::Vector2d>& waypoints() const { return pts_; }
  const Eigen::Vector2d& merge_point() const { return merge_point_; }
  double total_length() const { return cum_.back(); }
  double merge_arclength() const { return merge_s_; }

  // Pose at arc length s in [0, total_length]. Throws std::out_of_range
  // otherwise.
  Pose pose_at(double s) const;

  // Same, but s beyond either end continues straight along the end segment.
  Pose pose_at_unbounded(double s) const;

  // Arc length of the point closest to p on the path extended past both ends
  // (can be negative or exceed total_length). Monotone along-road progress.
  double progress_of(const Eigen::Vector2d& p) const;

  // Tangent angle at the closest on-path point to p; past the ends, the end
  // segment's angle.
  double heading_at(const Eigen::Vector2d& p) const;

 private:
  std::vector<Eigen::Vector2d> pts_;
  std::vector<double> cum_;
  Eigen::Vector2d merge_point_;
  double merge_s_ = 0.0;
};

// Rotation by the lane heading, R_theta in SO(2).
struct HeadingRotation {
  explicit HeadingRotation(double theta_rad) : theta(theta_rad) {}
  double theta;
  Eigen::Matrix2d matrix() const;
};

// R_theta * (a, 0): scalar along-lane acceleration mapped into the plane.
Eigen::Vector2d project_control(double theta, double a);

// Scalar coefficient of the reduced constraint: row * R_theta * (1, 0)^T.
double reduce_constraint(const Eigen::RowVector2d& row, double theta);

}  // namespace safemerge
