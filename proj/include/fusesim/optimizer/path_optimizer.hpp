#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fusesim/domain/types.hpp"
#include "fusesim/telemetry/call_graph.hpp"

namespace fusesim {

// Entry points and their synchronous reach, derived from an observed graph.
// An anchor is a task that is entered from outside a synchronous chain:
// called externally or asynchronously at least once.
struct PathAnalysis {
  std::vector<std::string> anchors;  // sorted
  std::map<std::string, std::set<std::string>> component;  // anchor -> tasks reachable over sync edges
  std::map<std::string, std::map<std::string, int>> depth;  // anchor -> task -> longest sync path length
  std::map<std::string, int> distance;  // hops from EXTERNAL over any observed edge
  std::map<std::string, double> completion_med_ms;

  bool IsAnchor(const std::string& task) const;
};

PathAnalysis AnalyzePaths(const AnnotatedCallGraph& graph);

enum class PathMoveKind { kAdd, kSplit, kPrune };

std::string_view ToString(PathMoveKind kind);

// kAdd: `task` joins the home group of anchor `target`.
// kSplit: anchor `task` leaves group `target` for a new group of its own.
// kPrune: `task` is removed from group `target`.
struct PathMove {
  PathMoveKind kind = PathMoveKind::kAdd;
  std::string task;
  std::string target;

  auto operator<=>(const PathMove& other) const {
    return std::tie(kind, task, target) <=> std::tie(other.kind, other.task, other.target);
  }
  bool operator==(const PathMove&) const = default;
  std::string ToString() const;
};

struct PathStepResult {
  FusionSetup setup;
  PathMove move;
};

// One move towards "synchronous chains fused, asynchronous calls split off".
// Moves are tried in order: kAdd (deepest first), kSplit, kPrune. Moves in
// `excluded` are skipped. nullopt when no move remains.
std::optional<PathStepResult> NextPathStep(const AnnotatedCallGraph& graph, const FusionSetup& current,
                                           const std::set<PathMove>& excluded = {});

// Every task in its own group at `memory_mb`, groups in app order.
FusionSetup SingletonSetup(const AppSpec& app, int memory_mb);

// All tasks in one group.
FusionSetup FusedSetup(const AppSpec& app, int memory_mb);

}  // namespace fusesim
