#include "fusesim/optimizer/path_optimizer.hpp"

#include <algorithm>
#include <deque>

#include "fusesim/telemetry/metrics.hpp"

namespace fusesim {

bool PathAnalysis::IsAnchor(const std::string& task) const {
  return std::binary_search(anchors.begin(), anchors.end(), task);
}

PathAnalysis AnalyzePaths(const AnnotatedCallGraph& graph) {
  PathAnalysis analysis;
  std::map<std::string, std::vector<std::string>> sync_out;
  std::map<std::string, std::vector<std::string>> any_out;
  for (const auto& [key, stats] : graph.edges) {
    any_out[key.caller].push_back(key.callee);
    if (key.caller != kExternalCaller && key.mode == CallMode::kSync) sync_out[key.caller].push_back(key.callee);
  }

  for (const auto& [task, node] : graph.nodes) {
    if (graph.CalledExternally(task) || graph.CalledWith(task, CallMode::kAsync)) analysis.anchors.push_back(task);
    if (!node.completion_offset_ms.empty()) analysis.completion_med_ms[task] = Median(node.completion_offset_ms);
  }

  const int bound = static_cast<int>(graph.nodes.size());
  for (const auto& anchor : analysis.anchors) {
    std::map<std::string, int>& depth = analysis.depth[anchor];
    depth[anchor] = 0;
    // Longest-path relaxation, capped at |nodes| so cycles terminate.
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [task, d] : std::map<std::string, int>(depth)) {
        auto it = sync_out.find(task);
        if (it == sync_out.end()) continue;
        for (const auto& callee : it->second) {
          auto [entry, inserted] = depth.emplace(callee, d + 1);
          if (inserted) {
            changed = true;
          } else if (d + 1 > entry->second && d + 1 < bound) {
            entry->second = d + 1;
            changed = true;
          }
        }
      }
    }
    for (const auto& [task, d] : depth) analysis.component[anchor].insert(task);
  }

  std::deque<std::string> frontier{std::string(kExternalCaller)};
  std::map<std::string, int> hops{{std::string(kExternalCaller), 0}};
  while (!frontier.empty()) {
    const std::string task = frontier.front();
    frontier.pop_front();
    for (const auto& callee : any_out[task]) {
      if (hops.emplace(callee, hops[task] + 1).second) frontier.push_back(callee);
    }
  }
  hops.erase(std::string(kExternalCaller));
  analysis.distance = std::move(hops);
  return analysis;
}

std::string_view ToString(PathMoveKind kind) {
  switch (kind) {
    case PathMoveKind::kAdd:
      return "add";
    case PathMoveKind::kSplit:
      return "split";
    case PathMoveKind::kPrune:
      return "prune";
  }
  return "add";
}

std::string PathMove::ToString() const {
  return std::string(fusesim::ToString(kind)) + "(" + task + "," + target + ")";
}

namespace {

int DistanceOf(const PathAnalysis& analysis, const std::string& task) {
  auto it = analysis.distance.find(task);
  return it == analysis.distance.end() ? 1 << 20 : it->second;
}

double CompletionOf(const PathAnalysis& analysis, const std::string& task) {
  auto it = analysis.completion_med_ms.find(task);
  return it == analysis.completion_med_ms.end() ? 0.0 : it->second;
}

void EraseMember(FusionGroup& group, const std::string& task) {
  std::erase(group.members, task);
}

// Re-points homes whose group no longer holds the task, then drops empty
// groups.
void Repair(FusionSetup& setup) {
  for (auto& [task, home] : setup.home) {
    const FusionGroup* group = setup.FindGroup(home);
    if (group != nullptr && group->Contains(task)) continue;
    for (const auto& candidate : setup.groups) {
      if (candidate.Contains(task)) {
        home = candidate.id;
        break;
      }
    }
  }
  std::erase_if(setup.groups, [](const FusionGroup& g) { return g.members.empty(); });
}

std::vector<std::string> HomedAnchors(const PathAnalysis& analysis, const FusionSetup& setup,
                                      const std::string& group_id) {
  std::vector<std::string> out;
  for (const auto& anchor : analysis.anchors) {
    auto it = setup.home.find(anchor);
    if (it != setup.home.end() && it->second == group_id) out.push_back(anchor);
  }
  return out;
}

std::optional<PathStepResult> TryAdd(const PathAnalysis& analysis, const FusionSetup& current,
                                     const std::set<PathMove>& excluded) {
  struct Candidate {
    int depth;
    double completion;
    std::string task;
    std::string anchor;
  };
  std::vector<Candidate> candidates;
  for (const auto& anchor : analysis.anchors) {
    const FusionGroup* home = current.HomeGroup(anchor);
    if (home == nullptr) continue;
    for (const auto& task : analysis.component.at(anchor)) {
      if (home->Contains(task) || !current.home.contains(task)) continue;
      candidates.push_back({analysis.depth.at(anchor).at(task), CompletionOf(analysis, task), task, anchor});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.depth != b.depth) return a.depth > b.depth;
    if (a.completion != b.completion) return a.completion > b.completion;
    if (a.task != b.task) return a.task < b.task;
    return a.anchor < b.anchor;
  });

  for (const auto& c : candidates) {
    PathMove move{PathMoveKind::kAdd, c.task, c.anchor};
    if (excluded.contains(move)) continue;
    FusionSetup next = current;
    const std::string target = next.home.at(c.anchor);
    next.FindGroup(target)->members.push_back(c.task);
    if (!analysis.IsAnchor(c.task)) {
      FusionGroup* old_home = next.FindGroup(next.home.at(c.task));
      if (old_home != nullptr && old_home->members.size() == 1) {
        old_home->members.clear();
        next.home[c.task] = target;
      }
    }
    Repair(next);
    return PathStepResult{std::move(next), std::move(move)};
  }
  return std::nullopt;
}

std::optional<PathStepResult> TrySplit(const PathAnalysis& analysis, const FusionSetup& current,
                                       const std::set<PathMove>& excluded) {
  auto shallower = [&](const std::string& a, const std::string& b) {
    const int da = DistanceOf(analysis, a);
    const int db = DistanceOf(analysis, b);
    if (da != db) return da < db;
    return a < b;
  };
  for (const auto& group : current.groups) {
    std::vector<std::string> anchors = HomedAnchors(analysis, current, group.id);
    if (anchors.size() < 2) continue;
    std::sort(anchors.begin(), anchors.end(), shallower);
    for (size_t i = 1; i < anchors.size(); ++i) {
      const std::string& task = anchors[i];
      PathMove move{PathMoveKind::kSplit, task, group.id};
      if (excluded.contains(move)) continue;

      FusionSetup next = current;
      FusionGroup fresh;
      fresh.id = next.NextGroupId();
      fresh.members = {task};
      fresh.memory_mb = group.memory_mb;
      next.home[task] = fresh.id;
      bool still_needed = false;
      for (const auto& other : HomedAnchors(analysis, next, group.id)) {
        if (analysis.component.at(other).contains(task)) still_needed = true;
      }
      if (!still_needed) EraseMember(*next.FindGroup(group.id), task);
      next.groups.push_back(std::move(fresh));
      Repair(next);
      return PathStepResult{std::move(next), std::move(move)};
    }
  }
  return std::nullopt;
}

std::optional<PathStepResult> TryPrune(const AnnotatedCallGraph& graph, const PathAnalysis& analysis,
                                       const FusionSetup& current, const std::set<PathMove>& excluded) {
  for (const auto& group : current.groups) {
    std::set<std::string> allowed;
    for (const auto& anchor : HomedAnchors(analysis, current, group.id)) {
      const auto& component = analysis.component.at(anchor);
      allowed.insert(component.begin(), component.end());
    }
    std::vector<std::string> members = group.members;
    std::sort(members.begin(), members.end());
    for (const auto& task : members) {
      if (allowed.contains(task) || !graph.nodes.contains(task)) continue;
      const bool elsewhere = std::any_of(current.groups.begin(), current.groups.end(), [&](const FusionGroup& g) {
        return g.id != group.id && g.Contains(task);
      });
      if (!elsewhere) continue;
      PathMove move{PathMoveKind::kPrune, task, group.id};
      if (excluded.contains(move)) continue;
      FusionSetup next = current;
      EraseMember(*next.FindGroup(group.id), task);
      Repair(next);
      return PathStepResult{std::move(next), std::move(move)};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PathStepResult> NextPathStep(const AnnotatedCallGraph& graph, const FusionSetup& current,
                                           const std::set<PathMove>& excluded) {
  if (graph.empty()) return std::nullopt;
  const PathAnalysis analysis = AnalyzePaths(graph);
  if (auto step = TryAdd(analysis, current, excluded)) return step;
  if (auto step = TrySplit(analysis, current, excluded)) return step;
  return TryPrune(graph, analysis, current, excluded);
}

FusionSetup SingletonSetup(const AppSpec& app, int memory_mb) {
  FusionSetup setup;
  for (const auto& task : app.tasks) {
    FusionGroup group;
    group.id = "g" + std::to_string(setup.groups.size());
    group.members = {task.id};
    group.memory_mb = memory_mb;
    setup.home[task.id] = group.id;
    setup.groups.push_back(std::move(group));
  }
  return setup;
}

FusionSetup FusedSetup(const AppSpec& app, int memory_mb) {
  FusionSetup setup;
  FusionGroup group;
  group.id = "g0";
  group.memory_mb = memory_mb;
  for (const auto& task : app.tasks) {
    group.members.push_back(task.id);
    setup.home[task.id] = group.id;
  }
  setup.groups.push_back(std::move(group));
  return setup;
}

}  // namespace fusesim
