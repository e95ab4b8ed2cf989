#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "safemerge/cbf.hpp"
#include "safemerge/dynamics.hpp"
#include "safemerge/feasibility.hpp"

namespace safemerge {

struct ControllerConfig {
  double alpha_nominal = 1.0;  // desired driving style (alpha-bar)
  double u_nominal = 0.0;      // planner acceleration along the lane, m/s^2
  ControlBounds bounds;
  double r_safe = 8.0;
  double eta = 0.99;
  CoefficientMode mode = CoefficientMode::kDerivationExact;
  bool adaptive = true;  // false: keep alpha = alpha_nominal (fixed baseline)
  void validate() const;
};

enum class StepStatus { kNominal, kFiltered, kInfeasibleFallback, kSafetyViolated };

const char* to_string(StepStatus s);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool feasible = false;
  double clamp(double u) const { return std::min(std::max(u, lo), hi); }
  bool contains(double u) const { return feasible && u >= lo && u <= hi; }
};

struct VehicleObservation {
  VehicleState state;
  NoiseModel noise;
};

struct PairDiagnostics {
  double a = 0.0;        // constraint row at the current step
  double b = 0.0;
  double h = 0.0;        // safety value at the current step
  double distance = 0.0;
  // Next-step feasibility bounds used by the alpha update; absent when the
  // pair sits on the h = 0 singularity after look-ahead.
  std::optional<FeasibilityBounds> next_bounds;
  std::optional<CbfActivity> next_activity;  // classified at the updated alpha
};

struct ControlDecision {
  double u = 0.0;          // chosen along-lane acceleration
  double alpha_used = 0.0; // alpha the constraints were built with
  double alpha_next = 0.0; // alpha to use at the next step
  Interval interval;       // feasible set this step (box + all pairs)
  StepStatus status = StepStatus::kNominal;
  std::vector<PairDiagnostics> pairs;
};

// Intersect the control box with every half-line {u : a u <= b}.
Interval feasible_interval(std::span<const ConstraintCoeffs> constraints,
                           const ControlBounds& cb);

// Minimally invasive 1-D projection of u_nominal onto a non-empty interval.
// Throws std::domain_error on an empty one.
double solve_qp(const Interval& interval, double u_nominal);

// Heading at a planar position, used to evaluate the look-ahead state on the
// lane. When absent the current heading is reused.
using HeadingLookup = std::function<double(const Eigen::Vector2d&)>;

// One control cycle: build pairwise constraints at alpha_prev, solve the QP
// (least-infeasible box endpoint when the set is empty), propagate everyone
// one expected step, compute next-step feasibility bounds, and update alpha.
ControlDecision step(const VehicleObservation& ego,
                     std::span<const VehicleObservation> merges,
                     const ControllerConfig& cfg, double dt, double theta,
                     double alpha_prev, const HeadingLookup& heading_at = {});

}  // namespace safemerge
