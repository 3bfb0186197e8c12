#include "fusesim/optimizer/infra_optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace fusesim {

size_t InfraPlan::TrialCount() const {
  size_t count = 0;
  for (const auto& window : windows) count += window.size();
  return count;
}

InfraPlan InfraSweepPlan(const FusionSetup& path_setup, const PlatformConfig& cfg) {
  if (cfg.memory_sizes_mb.empty()) throw ConfigError("infra sweep needs a non-empty memory size list");
  const std::vector<int> sizes = cfg.CandidateMemorySizes();
  std::map<std::string, std::vector<int>> remaining;
  size_t longest = 0;
  for (const auto& group : path_setup.groups) {
    auto& untried = remaining[group.id];
    for (int size : sizes) {
      if (size != group.memory_mb) untried.push_back(size);
    }
    longest = std::max(longest, untried.size());
  }
  InfraPlan plan;
  for (size_t w = 0; w < longest; ++w) {
    InfraWindow window;
    for (const auto& group : path_setup.groups) {
      const auto& untried = remaining[group.id];
      if (w < untried.size()) window[group.id] = untried[w];
    }
    plan.windows.push_back(std::move(window));
  }
  return plan;
}

FusionSetup ApplyInfraWindow(const FusionSetup& setup, const InfraWindow& window) {
  FusionSetup out = setup;
  for (auto& group : out.groups) {
    auto it = window.find(group.id);
    if (it != window.end()) group.memory_mb = it->second;
  }
  return out;
}

void RecordGroupTrials(const FusionSetup& setup, const MetricsSnapshot& snapshot, GroupTrials& trials) {
  const double requests = static_cast<double>(std::max<int64_t>(snapshot.request_count, 1));
  for (const auto& group : setup.groups) {
    GroupTrial trial;
    auto cost = snapshot.group_cost_usd.find(group.id);
    if (cost != snapshot.group_cost_usd.end()) trial.cost_usd = cost->second / requests;
    auto wall = snapshot.group_wall_med_ms.find(group.id);
    if (wall != snapshot.group_wall_med_ms.end()) trial.wall_med_ms = wall->second;
    trials[group.id][group.memory_mb] = trial;
  }
}

namespace {

int PickMinCost(const std::map<int, GroupTrial>& by_size, double epsilon) {
  double cheapest = INFINITY;
  for (const auto& [size, trial] : by_size) cheapest = std::min(cheapest, trial.cost_usd);
  const double limit = cheapest * (1.0 + epsilon);
  int best = -1;
  for (const auto& [size, trial] : by_size) {  // ascending sizes: smaller memory wins exact ties
    if (trial.cost_usd > limit) continue;
    if (best < 0 || trial.wall_med_ms < by_size.at(best).wall_med_ms) best = size;
  }
  return best;
}

int PickWeighted(const std::map<int, GroupTrial>& by_size, const GroupTrial& reference, const Objective& objective) {
  auto norm = [](double v, double base) { return base > 0.0 ? v / base : v; };
  int best = -1;
  double best_score = INFINITY;
  for (const auto& [size, trial] : by_size) {
    const double score = objective.alpha * norm(trial.cost_usd, reference.cost_usd) +
                         (1.0 - objective.alpha) * norm(trial.wall_med_ms, reference.wall_med_ms);
    if (best < 0 || score < best_score * (1.0 - objective.epsilon)) {
      best = size;
      best_score = score;
    }
  }
  return best;
}

}  // namespace

InfraSelection InfraSelect(const FusionSetup& path_setup, const GroupTrials& trials, const PlatformConfig& cfg,
                           const Objective& objective) {
  InfraSelection selection;
  const std::vector<int> sizes = cfg.CandidateMemorySizes();
  for (const auto& group : path_setup.groups) {
    auto it = trials.find(group.id);
    for (int size : sizes) {
      if (it == trials.end() || !it->second.contains(size)) selection.missing.emplace_back(group.id, size);
    }
  }
  if (!selection.missing.empty()) return selection;

  FusionSetup chosen = path_setup;
  for (auto& group : chosen.groups) {
    const auto& by_size = trials.at(group.id);
    if (objective.mode == ObjectiveMode::kWeighted) {
      group.memory_mb = PickWeighted(by_size, by_size.at(group.memory_mb), objective);
    } else {
      group.memory_mb = PickMinCost(by_size, objective.epsilon);
    }
  }
  selection.setup = std::move(chosen);
  return selection;
}

}  // namespace fusesim
