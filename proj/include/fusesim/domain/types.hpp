#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fusesim {

// Simulated time. Integer microseconds keep event ordering and ms-level
// accounting exact.
using Micros = std::chrono::microseconds;

inline Micros FromMillis(double ms) { return Micros(std::llround(ms * 1000.0)); }
inline double ToMillis(Micros t) { return static_cast<double>(t.count()) / 1000.0; }

// Raised for any configuration that cannot be simulated: invalid apps,
// invalid setups, malformed config files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CallMode { kSync, kAsync };

std::string_view ToString(CallMode mode);
std::optional<CallMode> ParseCallMode(std::string_view text);

struct IoCall {
  std::string service;
  double latency_ms = 0.0;
  int count = 1;

  bool operator==(const IoCall&) const = default;
};

struct CallEdge {
  std::string callee;
  CallMode mode = CallMode::kSync;

  bool operator==(const CallEdge&) const = default;
};

// A developer-written task. `cpu_work` is milliseconds of compute at exactly
// one vCPU; `parallelism` caps how many vCPUs the task can exploit.
struct TaskSpec {
  std::string id;
  double cpu_work = 0.0;
  int parallelism = 1;
  std::vector<IoCall> io_calls;
  std::vector<CallEdge> calls;

  double TotalIoMillis() const;

  bool operator==(const TaskSpec&) const = default;
};

// The application as written by developers. `operations` lists the roots the
// builtin workload generators draw from; empty means "all roots".
struct AppSpec {
  std::vector<TaskSpec> tasks;
  std::vector<std::string> roots;
  std::vector<std::string> operations;

  const TaskSpec* FindTask(std::string_view id) const;
  std::optional<size_t> IndexOf(std::string_view id) const;
  bool IsRoot(std::string_view id) const;
  const std::vector<std::string>& ScheduledOperations() const;
  std::vector<std::string> TaskIds() const;

  bool operator==(const AppSpec&) const = default;
};

struct FusionGroup {
  std::string id;
  std::vector<std::string> members;
  int memory_mb = 128;

  bool Contains(std::string_view task) const;

  bool operator==(const FusionGroup&) const = default;
};

// Groups plus the home table: home[t] is the group that receives remote calls
// for task t. A call is local iff the callee is a member of the caller's
// group; membership may overlap between groups.
struct FusionSetup {
  std::vector<FusionGroup> groups;
  std::map<std::string, std::string> home;

  const FusionGroup* FindGroup(std::string_view id) const;
  FusionGroup* FindGroup(std::string_view id);
  const FusionGroup* HomeGroup(std::string_view task) const;

  // A fresh id of the form "g<N>" not used by any group.
  std::string NextGroupId() const;

  bool operator==(const FusionSetup&) const = default;
};

struct PlatformConfig {
  std::vector<int> memory_sizes_mb = {768, 1024, 1536, 1650, 2048, 3000, 4096, 6144};
  int default_memory_mb = 128;
  int vcpu_reference_mb = 1650;
  double remote_sync_overhead_ms = 50.0;
  double remote_async_dispatch_ms = 10.0;
  double handler_warm_overhead_ms = 1.3;
  double handler_cold_overhead_ms = 36.6;
  double platform_cold_init_ms = 250.0;
  double instance_idle_timeout_s = 600.0;
  double price_per_gb_s = 1.6667e-5;
  double price_per_request = 2e-7;
  double billing_granularity_ms = 1.0;
  bool bill_cold_init = false;

  // Sorted, de-duplicated union of memory_sizes_mb and default_memory_mb:
  // every size a group may be deployed with.
  std::vector<int> CandidateMemorySizes() const;

  bool operator==(const PlatformConfig&) const = default;
};

// Throws ConfigError when a PlatformConfig invariant is broken.
void ValidatePlatformConfig(const PlatformConfig& cfg);

}  // namespace fusesim
