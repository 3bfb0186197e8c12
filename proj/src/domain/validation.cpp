#include "fusesim/domain/validation.hpp"

#include <algorithm>
#include <set>

namespace fusesim {

std::string Violation::ToString() const {
  switch (kind) {
    case ViolationKind::kMissingTask:
      return "MissingTask(" + task + ")";
    case ViolationKind::kUnknownTask:
      return "UnknownTask(" + task + (group.empty() ? "" : "," + group) + ")";
    case ViolationKind::kEmptyGroup:
      return "EmptyGroup(" + group + ")";
    case ViolationKind::kDuplicateGroupId:
      return "DuplicateGroupId(" + group + ")";
    case ViolationKind::kMissingHome:
      return "MissingHome(" + task + ")";
    case ViolationKind::kUnknownHomeGroup:
      return "UnknownHomeGroup(" + task + "," + group + ")";
    case ViolationKind::kHomeNotMember:
      return "HomeNotMember(" + task + "," + group + ")";
    case ViolationKind::kInvalidMemory:
      return "InvalidMemory(" + group + ")";
    case ViolationKind::kUnknownCallee:
      return "UnknownCallee(" + task + "," + group + ")";
    case ViolationKind::kSelfCall:
      return "SelfCall(" + task + ")";
    case ViolationKind::kUnknownRoot:
      return "UnknownRoot(" + task + ")";
    case ViolationKind::kNoRoots:
      return "NoRoots";
    case ViolationKind::kDuplicateTask:
      return "DuplicateTask(" + task + ")";
    case ViolationKind::kInvalidTask:
      return "InvalidTask(" + task + ")";
  }
  return "Unknown";
}

std::vector<Violation> ValidateSetup(const FusionSetup& setup, const AppSpec& app, const PlatformConfig* cfg) {
  std::vector<Violation> violations;
  std::set<std::string> seen_ids;
  std::set<std::string> covered;
  const std::vector<int> sizes = cfg ? cfg->CandidateMemorySizes() : std::vector<int>{};

  for (const auto& group : setup.groups) {
    if (!seen_ids.insert(group.id).second) {
      violations.push_back({ViolationKind::kDuplicateGroupId, "", group.id});
    }
    if (group.members.empty()) violations.push_back({ViolationKind::kEmptyGroup, "", group.id});
    for (const auto& member : group.members) {
      if (app.FindTask(member) == nullptr) {
        violations.push_back({ViolationKind::kUnknownTask, member, group.id});
      } else {
        covered.insert(member);
      }
    }
    if (cfg && std::find(sizes.begin(), sizes.end(), group.memory_mb) == sizes.end()) {
      violations.push_back({ViolationKind::kInvalidMemory, "", group.id});
    }
  }

  for (const auto& task : app.tasks) {
    if (!covered.contains(task.id)) {
      violations.push_back({ViolationKind::kMissingTask, task.id, ""});
      continue;
    }
    auto it = setup.home.find(task.id);
    if (it == setup.home.end()) {
      violations.push_back({ViolationKind::kMissingHome, task.id, ""});
      continue;
    }
    const FusionGroup* home = setup.FindGroup(it->second);
    if (home == nullptr) {
      violations.push_back({ViolationKind::kUnknownHomeGroup, task.id, it->second});
    } else if (!home->Contains(task.id)) {
      violations.push_back({ViolationKind::kHomeNotMember, task.id, it->second});
    }
  }
  for (const auto& [task, group] : setup.home) {
    if (app.FindTask(task) == nullptr) violations.push_back({ViolationKind::kUnknownTask, task, group});
  }
  return violations;
}

std::vector<Violation> ValidateApp(const AppSpec& app) {
  std::vector<Violation> violations;
  std::set<std::string> ids;
  for (const auto& task : app.tasks) {
    if (!ids.insert(task.id).second) violations.push_back({ViolationKind::kDuplicateTask, task.id, ""});
    bool invalid = !(task.cpu_work >= 0.0) || task.parallelism < 1;
    for (const auto& io : task.io_calls) {
      if (!(io.latency_ms >= 0.0) || io.count < 0) invalid = true;
    }
    if (invalid) violations.push_back({ViolationKind::kInvalidTask, task.id, ""});
    for (const auto& edge : task.calls) {
      if (edge.callee == task.id) {
        violations.push_back({ViolationKind::kSelfCall, task.id, ""});
      } else if (app.FindTask(edge.callee) == nullptr) {
        violations.push_back({ViolationKind::kUnknownCallee, task.id, edge.callee});
      }
    }
  }
  if (app.roots.empty()) violations.push_back({ViolationKind::kNoRoots, "", ""});
  for (const auto& root : app.roots) {
    if (app.FindTask(root) == nullptr) violations.push_back({ViolationKind::kUnknownRoot, root, ""});
  }
  for (const auto& op : app.operations) {
    if (!app.IsRoot(op)) violations.push_back({ViolationKind::kUnknownRoot, op, ""});
  }
  return violations;
}

namespace {

void ThrowIfAny(const std::vector<Violation>& violations, const std::string& what) {
  if (violations.empty()) return;
  std::string message = what + ":";
  for (const auto& v : violations) message += " " + v.ToString();
  throw ConfigError(message);
}

}  // namespace

void RequireValidApp(const AppSpec& app) { ThrowIfAny(ValidateApp(app), "invalid application"); }

void RequireValidSetup(const FusionSetup& setup, const AppSpec& app, const PlatformConfig* cfg) {
  ThrowIfAny(ValidateSetup(setup, app, cfg), "invalid fusion setup");
}

}  // namespace fusesim
