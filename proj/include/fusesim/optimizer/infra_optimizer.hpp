#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fusesim/domain/types.hpp"
#include "fusesim/optimizer/objective.hpp"
#include "fusesim/telemetry/metrics.hpp"

namespace fusesim {

// One measurement window of the sweep: the size each listed group runs at.
// Groups not listed keep their path-phase memory.
using InfraWindow = std::map<std::string, int>;

struct InfraPlan {
  std::vector<InfraWindow> windows;

  size_t TrialCount() const;
  bool empty() const { return windows.empty(); }
};

// Every candidate size except the one each group already ran with, tried
// for all groups in parallel: window w gives each group its w-th untried
// size in ascending order. ConfigError for an empty size list.
InfraPlan InfraSweepPlan(const FusionSetup& path_setup, const PlatformConfig& cfg);

FusionSetup ApplyInfraWindow(const FusionSetup& setup, const InfraWindow& window);

// Per-request figures attributed to one group at one size.
struct GroupTrial {
  double cost_usd = 0.0;  // the group's billing lines / requests
  double wall_med_ms = 0.0;
};

// group id -> memory -> trial
using GroupTrials = std::map<std::string, std::map<int, GroupTrial>>;

// Adds the trial each group of `setup` ran in the window `snapshot` covers.
void RecordGroupTrials(const FusionSetup& setup, const MetricsSnapshot& snapshot, GroupTrials& trials);

struct InfraSelection {
  std::optional<FusionSetup> setup;  // empty while trials are missing
  std::vector<std::pair<std::string, int>> missing;
};

// Chooses each group's size independently. kMinCostTiebreakRr: sizes within
// epsilon of the cheapest are tied; ties go to the lower group wall median,
// then the smaller memory. kWeighted scores each size against the group's
// path-phase trial.
InfraSelection InfraSelect(const FusionSetup& path_setup, const GroupTrials& trials, const PlatformConfig& cfg,
                           const Objective& objective);

}  // namespace fusesim
