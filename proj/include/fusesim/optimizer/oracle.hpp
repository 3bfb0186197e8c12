#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fusesim/domain/types.hpp"
#include "fusesim/optimizer/objective.hpp"
#include "fusesim/telemetry/metrics.hpp"
#include "fusesim/workloads/schedule.hpp"

namespace fusesim {

// Search space too large for exhaustive enumeration.
class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr size_t kOracleMaxTasks = 6;
inline constexpr size_t kOracleMaxSizes = 3;

// Replays `schedule` against `setup` in a fresh world.
MetricsSnapshot EvaluateSetup(const AppSpec& app, const PlatformConfig& cfg, const FusionSetup& setup,
                              const WorkloadSchedule& schedule);

// All set partitions of {0..n-1} as restricted growth strings, in
// lexicographic order.
std::vector<std::vector<int>> SetPartitions(size_t n);

struct OracleResult {
  FusionSetup setup;
  MetricsSnapshot snapshot;
  double objective_value = 0.0;
  size_t evaluated = 0;
};

// Tries every partition of the tasks into groups with every per-group size
// and returns the objective-minimal setup. kMinCostTiebreakRr orders by
// (cost, rr_med) exactly; kWeighted by the weighted value against the
// all-singletons setup. Ties keep the first setup in enumeration order.
OracleResult BruteForceOptimal(const AppSpec& app, const WorkloadSchedule& schedule, const PlatformConfig& cfg,
                               const Objective& objective);

}  // namespace fusesim
