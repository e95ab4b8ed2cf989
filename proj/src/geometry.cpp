#include "safemerge/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace safemerge {

LanePath::LanePath(std::vector<Eigen::Vector2d> waypoints,
                   Eigen::Vector2d merge_point)
    : pts_(std::move(waypoints)), merge_point_(std::move(merge_point)) {
  if (pts_.size() < 2) {
    throw std::invalid_argument("LanePath needs at least 2 waypoints");
  }
  if (!merge_point_.allFinite()) {
    throw std::invalid_argument("LanePath merge point must be finite");
  }
  cum_.reserve(pts_.size());
  cum_.push_back(0.0);
  for (std::size_t i = 1; i < pts_.size(); ++i) {
    if (!pts_[i].allFinite()) {
      throw std::invalid_argument("LanePath waypoints must be finite");
    }
    const double len = (pts_[i] - pts_[i - 1]).norm();
    if (len <= 1e-9) {
      throw std::invalid_argument("LanePath waypoints must be distinct");
    }
    cum_.push_back(cum_.back() + len);
  }

  // Locate the merge point on the polyline (clamped projection per segment).
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    const Eigen::Vector2d d = pts_[i + 1] - pts_[i];
    const double len2 = d.squaredNorm();
    double t = (merge_point_ - pts_[i]).dot(d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const Eigen::Vector2d q = pts_[i] + t * d;
    const double dist = (merge_point_ - q).norm();
    if (dist < best_dist) {
      best_dist = dist;
      merge_s_ = cum_[i] + t * std::sqrt(len2);
    }
  }
  if (best_dist > 1e-6) {
    std::ostringstream os;
    os << "merge point (" << merge_point_.x() << ", " << merge_point_.y()
       << ") is " << best_dist << " m off the lane polyline";
    throw std::invalid_argument(os.str());
  }
}

Pose LanePath::pose_at(double s) const {
  if (!(s >= 0.0 && s <= total_length())) {
    std::ostringstream os;
    os << "arc length " << s << " outside [0, " << total_length() << "]";
    throw std::out_of_range(os.str());
  }
  return pose_at_unbounded(s);
}

Pose LanePath::pose_at_unbounded(double s) const {
  // Segment index: last i with cum_[i] <= s, clamped to a real segment.
  std::size_t i = 0;
  while (i + 2 < pts_.size() && s > cum_[i + 1]) ++i;
  const Eigen::Vector2d d = (pts_[i + 1] - pts_[i]).normalized();
  return Pose{pts_[i] + d * (s - cum_[i]), std::atan2(d.y(), d.x())};
}

double LanePath::progress_of(const Eigen::Vector2d& p) const {
  double best_dist = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  const std::size_t n = pts_.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d d = pts_[i + 1] - pts_[i];
    const double len2 = d.squaredNorm();
    double t = (p - pts_[i]).dot(d) / len2;
    if (i > 0) t = std::max(t, 0.0);      // only the first segment extends back
    if (i + 1 < n) t = std::min(t, 1.0);  // only the last segment extends on
    const Eigen::Vector2d q = pts_[i] + t * d;
    const double dist = (p - q).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best_s = cum_[i] + t * std::sqrt(len2);
    }
  }
  return best_s;
}

double LanePath::heading_at(const Eigen::Vector2d& p) const {
  const double s = std::clamp(progress_of(p), 0.0, total_length());
  return pose_at_unbounded(s).theta;
}

Eigen::Matrix2d HeadingRotation::matrix() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

Eigen::Vector2d project_control(double theta, double a) {
  return {a * std::cos(theta), a * std::sin(theta)};
}

double reduce_constraint(const Eigen::RowVector2d& row, double theta) {
  // row * R_theta * e1 = row . (cos theta, sin theta)
  return row.x() * std::cos(theta) + row.y() * std::sin(theta);
}

}  // namespace safemerge
