#include "fusesim/domain/types.hpp"

#include <algorithm>
#include <set>

namespace fusesim {

std::string_view ToString(CallMode mode) { return mode == CallMode::kSync ? "SYNC" : "ASYNC"; }

std::optional<CallMode> ParseCallMode(std::string_view text) {
  if (text == "SYNC" || text == "sync") return CallMode::kSync;
  if (text == "ASYNC" || text == "async") return CallMode::kAsync;
  return std::nullopt;
}

double TaskSpec::TotalIoMillis() const {
  double total = 0.0;
  for (const auto& io : io_calls) total += io.latency_ms * io.count;
  return total;
}

const TaskSpec* AppSpec::FindTask(std::string_view id) const {
  for (const auto& task : tasks) {
    if (task.id == id) return &task;
  }
  return nullptr;
}

std::optional<size_t> AppSpec::IndexOf(std::string_view id) const {
  for (size_t i = 0; i < tasks.size(); ++i) {
    if (tasks[i].id == id) return i;
  }
  return std::nullopt;
}

bool AppSpec::IsRoot(std::string_view id) const {
  return std::find(roots.begin(), roots.end(), id) != roots.end();
}

const std::vector<std::string>& AppSpec::ScheduledOperations() const {
  return operations.empty() ? roots : operations;
}

std::vector<std::string> AppSpec::TaskIds() const {
  std::vector<std::string> ids;
  ids.reserve(tasks.size());
  for (const auto& task : tasks) ids.push_back(task.id);
  return ids;
}

bool FusionGroup::Contains(std::string_view task) const {
  return std::find(members.begin(), members.end(), task) != members.end();
}

const FusionGroup* FusionSetup::FindGroup(std::string_view id) const {
  for (const auto& group : groups) {
    if (group.id == id) return &group;
  }
  return nullptr;
}

FusionGroup* FusionSetup::FindGroup(std::string_view id) {
  for (auto& group : groups) {
    if (group.id == id) return &group;
  }
  return nullptr;
}

const FusionGroup* FusionSetup::HomeGroup(std::string_view task) const {
  auto it = home.find(std::string(task));
  if (it == home.end()) return nullptr;
  return FindGroup(it->second);
}

std::string FusionSetup::NextGroupId() const {
  for (size_t n = groups.size();; ++n) {
    std::string candidate = "g" + std::to_string(n);
    if (FindGroup(candidate) == nullptr) return candidate;
  }
}

std::vector<int> PlatformConfig::CandidateMemorySizes() const {
  std::set<int> sizes(memory_sizes_mb.begin(), memory_sizes_mb.end());
  sizes.insert(default_memory_mb);
  return {sizes.begin(), sizes.end()};
}

void ValidatePlatformConfig(const PlatformConfig& cfg) {
  if (cfg.memory_sizes_mb.empty()) throw ConfigError("memory_sizes_mb must not be empty");
  for (size_t i = 0; i < cfg.memory_sizes_mb.size(); ++i) {
    if (cfg.memory_sizes_mb[i] <= 0) throw ConfigError("memory sizes must be positive");
    if (i > 0 && cfg.memory_sizes_mb[i] <= cfg.memory_sizes_mb[i - 1]) {
      throw ConfigError("memory_sizes_mb must be strictly increasing");
    }
  }
  const bool default_listed = std::find(cfg.memory_sizes_mb.begin(), cfg.memory_sizes_mb.end(),
                                        cfg.default_memory_mb) != cfg.memory_sizes_mb.end();
  if (!default_listed && cfg.default_memory_mb != 128) {
    throw ConfigError("default_memory_mb must be 128 or one of memory_sizes_mb");
  }
  if (cfg.vcpu_reference_mb <= 0) throw ConfigError("vcpu_reference_mb must be positive");
  const double non_negative[] = {cfg.remote_sync_overhead_ms,  cfg.remote_async_dispatch_ms,
                                 cfg.handler_warm_overhead_ms, cfg.handler_cold_overhead_ms,
                                 cfg.platform_cold_init_ms,    cfg.instance_idle_timeout_s,
                                 cfg.price_per_gb_s,           cfg.price_per_request};
  for (double value : non_negative) {
    if (!(value >= 0.0)) throw ConfigError("latencies and prices must be non-negative");
  }
  if (!(cfg.billing_granularity_ms > 0.0)) throw ConfigError("billing_granularity_ms must be positive");
}

}  // namespace fusesim
