#include "safemerge/controller.hpp"

#include <cmath>
#include <stdexcept>

#include "safemerge/geometry.hpp"

namespace safemerge {

void ControllerConfig::validate() const {
  bounds.validate();
  SafetyParams{r_safe, eta, alpha_nominal}.validate();
  if (!std::isfinite(u_nominal)) {
    throw std::invalid_argument("u_nominal must be finite");
  }
  // u_nominal outside [u_min, u_max] stays legal; the QP clamps it.
}

const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::kNominal: return "nominal";
    case StepStatus::kFiltered: return "filtered";
    case StepStatus::kInfeasibleFallback: return "infeasible-fallback";
    case StepStatus::kSafetyViolated: return "safety-violated";
  }
  return "?";
}

Interval feasible_interval(std::span<const ConstraintCoeffs> constraints,
                           const ControlBounds& cb) {
  cb.validate();
  double lo = cb.u_min;
  double hi = cb.u_max;
  for (const ConstraintCoeffs& c : constraints) {
    if (c.a > 0.0) {
      hi = std::min(hi, c.b / c.a);
    } else if (c.a < 0.0) {
      lo = std::max(lo, c.b / c.a);
    } else if (c.b < 0.0) {
      return Interval{0.0, 0.0, false};  // 0 <= b fails for every u
    }
  }
  if (lo > hi) return Interval{0.0, 0.0, false};
  return Interval{lo, hi, true};
}

double solve_qp(const Interval& interval, double u_nominal) {
  if (!interval.feasible) {
    throw std::domain_error("solve_qp requires a non-empty interval");
  }
  return interval.clamp(u_nominal);
}

namespace {

PairGeometry pair_geometry(const VehicleObservation& ego,
                           const VehicleObservation& m) {
  return PairGeometry{ego.state.position - m.state.position,
                      ego.state.velocity - m.state.velocity,
                      ego.noise.mean - m.noise.mean,
                      ego.noise.cov + m.noise.cov};
}

// Least-infeasible box endpoint: minimize the worst constraint violation,
// breaking ties toward the nominal control.
double fallback_control(std::span<const ConstraintCoeffs> cons,
                        const ControlBounds& cb, double u_nominal) {
  auto worst = [&cons](double u) {
    double v = 0.0;
    for (const ConstraintCoeffs& c : cons) {
      v = std::max(v, c.a * u - c.b);
    }
    return v;
  };
  const double v_lo = worst(cb.u_min);
  const double v_hi = worst(cb.u_max);
  if (v_lo < v_hi) return cb.u_min;
  if (v_hi < v_lo) return cb.u_max;
  return std::abs(cb.u_min - u_nominal) <= std::abs(cb.u_max - u_nominal)
             ? cb.u_min
             : cb.u_max;
}

}  // namespace

ControlDecision step(const VehicleObservation& ego,
                     std::span<const VehicleObservation> merges,
                     const ControllerConfig& cfg, double dt, double theta,
                     double alpha_prev, const HeadingLookup& heading_at) {
  cfg.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(alpha_prev >= 0.0)) throw std::invalid_argument("alpha must be >= 0");

  ControlDecision out;
  out.alpha_used = alpha_prev;
  out.pairs.reserve(merges.size());

  // Constraints at the current step, alpha carried over from the last cycle.
  std::vector<ConstraintCoeffs> cons;
  cons.reserve(merges.size());
  bool violated = false;
  for (const VehicleObservation& m : merges) {
    const PairGeometry g = pair_geometry(ego, m);
    const ConstraintCoeffs c = build_constraint(
        g, SafetyParams{cfg.r_safe, cfg.eta, alpha_prev}, dt, theta, cfg.mode);
    cons.push_back(c);
    PairDiagnostics diag;
    diag.a = c.a;
    diag.b = c.b;
    diag.distance = g.dx.norm();
    diag.h = safety_value(ego.state.position, m.state.position, cfg.r_safe);
    if (diag.h < 0.0) violated = true;
    out.pairs.push_back(std::move(diag));
  }

  out.interval = feasible_interval(cons, cfg.bounds);
  if (out.interval.feasible) {
    out.u = solve_qp(out.interval, cfg.u_nominal);
    out.status = out.u == cfg.u_nominal ? StepStatus::kNominal : StepStatus::kFiltered;
  } else {
    out.u = fallback_control(cons, cfg.bounds, cfg.u_nominal);
    out.status = StepStatus::kInfeasibleFallback;
  }
  if (violated) out.status = StepStatus::kSafetyViolated;

  // Look-ahead one expected step and bound the feasible alpha there.
  const StepParams sp{dt};
  const VehicleObservation ego_next{
      step_expected(ego.state, project_control(theta, out.u), ego.noise, sp),
      ego.noise};
  const double theta_next =
      heading_at ? heading_at(ego_next.state.position) : theta;
  std::vector<FeasibilityBounds> fbs;
  fbs.reserve(merges.size());
  for (std::size_t i = 0; i < merges.size(); ++i) {
    const VehicleObservation m_next{
        step_expected(merges[i].state, Eigen::Vector2d::Zero(), merges[i].noise, sp),
        merges[i].noise};
    const PairGeometry g1 = pair_geometry(ego_next, m_next);
    const double h1 = g1.dx.squaredNorm() - cfg.r_safe * cfg.r_safe;
    if (std::abs(h1) < kSingularH) continue;  // alpha-independent there
    const FeasibilityBounds fb = bounds_for_pair(g1, cfg.r_safe, cfg.eta, dt,
                                                 theta_next, cfg.bounds, cfg.mode);
    out.pairs[i].next_bounds = fb;
    fbs.push_back(fb);
  }
  out.alpha_next = cfg.adaptive
                       ? adapt_alpha(cfg.alpha_nominal, fbs)
                       : cfg.alpha_nominal;
  for (PairDiagnostics& diag : out.pairs) {
    if (diag.next_bounds) {
      diag.next_activity = classify(out.alpha_next, *diag.next_bounds);
    }
  }
  return out;
}

}  // namespace safemerge
