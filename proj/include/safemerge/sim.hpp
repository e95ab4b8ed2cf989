#pragma once

#include <optional>
#include <string>
#include <vector>

#include "safemerge/controller.hpp"
#include "safemerge/geometry.hpp"

namespace safemerge {

struct VehicleSetup {
  LanePath lane;
  double init_arclength = 0.0;  // m along the lane
  double init_speed = 0.0;      // m/s along the lane tangent
  NoiseModel noise;
};

struct ScenarioConfig {
  VehicleSetup ego;
  std::vector<VehicleSetup> merges;
  ControllerConfig controller;
  double dt = 0.1;
  int horizon = 200;
  std::uint64_t seed = 0;
  // alpha carried into the first step; defaults to controller.alpha_nominal.
  std::optional<double> alpha_initial;
  // Permit initial pairwise distances below r_safe (violated-start studies).
  bool allow_unsafe_start = false;

  void validate() const;
  double alpha0() const { return alpha_initial.value_or(controller.alpha_nominal); }
};

struct StepRecord {
  int t = 0;
  VehicleState ego;
  std::vector<VehicleState> merges;
  std::vector<double> distances;  // per pair
  std::vector<double> h_values;
  bool has_decision = false;  // terminal record carries states only
  double u = 0.0;
  double alpha = 0.0;  // alpha used by this step's constraints
  Interval interval;
  StepStatus status = StepStatus::kNominal;
};

enum class MergeSlot { kFront, kBetween, kBehind, kIncomplete };

const char* to_string(MergeSlot s);

struct MergeOutcome {
  std::vector<bool> ego_ahead;  // per merging vehicle at crossing time
  MergeSlot slot = MergeSlot::kIncomplete;
  int crossing_step = -1;
};

struct TraceSummary {
  double min_distance = 0.0;
  bool collision = false;      // min pairwise distance < r_safe at any step
  int infeasible_steps = 0;    // steps with an empty feasible interval
  int safety_violated_steps = 0;
  int filtered_steps = 0;
  MergeOutcome outcome;
};

struct SimulationTrace {
  std::vector<StepRecord> steps;  // horizon + 1 records, last is terminal
  TraceSummary summary;
};

SimulationTrace run_episode(const ScenarioConfig& cfg, std::uint64_t trial_id = 0);

// Slot of the ego relative to the merging vehicles, decided at the step the
// ego first reaches its lane's merge point (by along-road progress relative
// to each vehicle's own merge arclength).
MergeOutcome classify_merge_outcome(const SimulationTrace& trace,
                                    const ScenarioConfig& cfg);

// Shape of a pairwise distance curve over an episode.
enum class DistanceCurveShape { kConvergesToSafe, kDiverges, kViolates };
DistanceCurveShape classify_distance_curve(const SimulationTrace& trace,
                                           std::size_t pair, double r_safe);

// Initial-state screen used by the validity batch: initial distances at or
// above r_safe, a non-empty feasible set at alpha0, and at least one gridded
// control whose successor step is feasible at the adapted alpha.
bool start_is_viable(const ScenarioConfig& cfg, int grid_points = 41);

struct ValidityRanges {
  double arclength_min = 0.0, arclength_max = 0.0;  // ego start, m
  double speed_min = 0.0, speed_max = 0.0;          // ego start, m/s
  double alpha_min = 0.5, alpha_max = 2.0;          // nominal driving style
  int max_attempts_per_trial = 200;
  void validate() const;
};

struct TrialSummary {
  int trial = 0;
  double init_arclength = 0.0;
  double init_speed = 0.0;
  double alpha_nominal = 0.0;
  int attempts = 1;  // sampling attempts consumed (rejections + 1)
  double min_distance = 0.0;
  bool collision = false;
  int infeasible_steps = 0;
  MergeSlot slot = MergeSlot::kIncomplete;
  DistanceCurveShape shape = DistanceCurveShape::kConvergesToSafe;
};

struct BatchReport {
  std::vector<TrialSummary> trials;
  double collision_rate = 0.0;
  double min_distance = 0.0;  // over all trials
  int total_infeasible_steps = 0;
  int total_rejections = 0;
  // min-distance histogram, fixed 0.5 m bins starting at bin_origin
  double bin_origin = 0.0;
  double bin_width = 0.5;
  std::vector<int> histogram;
};

BatchReport run_validity_batch(const ScenarioConfig& base, int n_trials,
                               const ValidityRanges& ranges, int n_threads = 0);

struct ComparisonResult {
  SimulationTrace adaptive;
  SimulationTrace fixed;
  std::vector<int> adaptation_steps;       // adaptive run, alpha above nominal
  std::vector<int> fixed_infeasible_steps; // fixed run, empty interval
};

// Identical scenario and seeds under Algorithm-style adaptation and under a
// fixed alpha = alpha_nominal.
ComparisonResult run_fixed_alpha_comparison(const ScenarioConfig& cfg);

}  // namespace safemerge
