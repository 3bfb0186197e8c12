#include "fusesim/optimizer/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "fusesim/optimizer/path_optimizer.hpp"
#include "fusesim/runtime/simulation.hpp"

namespace fusesim {

MetricsSnapshot EvaluateSetup(const AppSpec& app, const PlatformConfig& cfg, const FusionSetup& setup,
                              const WorkloadSchedule& schedule) {
  Simulation sim(app, cfg);
  sim.ApplySetup(setup);
  return Snapshot(Replay(sim, schedule, Micros{0}), "0");
}

std::vector<std::vector<int>> SetPartitions(size_t n) {
  std::vector<std::vector<int>> out;
  if (n == 0) return out;
  std::vector<int> rgs(n, 0);
  std::function<void(size_t, int)> extend = [&](size_t i, int max_block) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      rgs[i] = b;
      extend(i + 1, std::max(max_block, b));
    }
  };
  extend(1, 0);
  return out;
}

OracleResult BruteForceOptimal(const AppSpec& app, const WorkloadSchedule& schedule, const PlatformConfig& cfg,
                               const Objective& objective) {
  ValidateObjective(objective);
  const std::vector<int> sizes = cfg.CandidateMemorySizes();
  if (app.tasks.size() > kOracleMaxTasks || sizes.size() > kOracleMaxSizes) {
    throw OracleLimitError("exhaustive search is limited to " + std::to_string(kOracleMaxTasks) + " tasks and " +
                           std::to_string(kOracleMaxSizes) + " memory sizes; got " +
                           std::to_string(app.tasks.size()) + " tasks and " + std::to_string(sizes.size()) +
                           " sizes");
  }
  if (app.tasks.empty()) throw ConfigError("app has no tasks");

  const MetricsSnapshot baseline =
      EvaluateSetup(app, cfg, SingletonSetup(app, cfg.default_memory_mb), schedule);

  OracleResult best;
  bool have_best = false;
  auto better = [&](const MetricsSnapshot& s, double value) {
    if (!have_best) return true;
    if (objective.mode == ObjectiveMode::kWeighted) return value < best.objective_value;
    if (s.mean_cost_pmi != best.snapshot.mean_cost_pmi) return s.mean_cost_pmi < best.snapshot.mean_cost_pmi;
    return s.rr_med < best.snapshot.rr_med;
  };

  size_t evaluated = 0;
  for (const auto& rgs : SetPartitions(app.tasks.size())) {
    const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    FusionSetup setup;
    for (int b = 0; b < blocks; ++b) setup.groups.push_back(FusionGroup{"g" + std::to_string(b), {}, 0});
    for (size_t t = 0; t < rgs.size(); ++t) {
      setup.groups[rgs[t]].members.push_back(app.tasks[t].id);
      setup.home[app.tasks[t].id] = setup.groups[rgs[t]].id;
    }

    std::vector<size_t> choice(blocks, 0);
    while (true) {
      for (int b = 0; b < blocks; ++b) setup.groups[b].memory_mb = sizes[choice[b]];
      const MetricsSnapshot snapshot = EvaluateSetup(app, cfg, setup, schedule);
      ++evaluated;
      const double value = ObjectiveValue(snapshot, objective, baseline);
      if (better(snapshot, value)) {
        best.setup = setup;
        best.snapshot = snapshot;
        best.objective_value = value;
        have_best = true;
      }
      int b = blocks - 1;
      while (b >= 0 && ++choice[b] == sizes.size()) choice[b--] = 0;
      if (b < 0) break;
    }
  }
  best.evaluated = evaluated;
  return best;
}

}  // namespace fusesim
