#pragma once

#include <string>

#include "fusesim/domain/types.hpp"

namespace fusesim {

// vCPU share granted to a function with `memory_mb`, linear in memory.
double VcpusForMemory(int memory_mb, const PlatformConfig& cfg);

// Milliseconds of CPU time at the effective vCPU count.
double TaskCpuMillis(const TaskSpec& task, int memory_mb, const PlatformConfig& cfg);

// CPU time plus all I/O waits; the task's own execution, excluding calls.
double TaskComputeDuration(const TaskSpec& task, int memory_mb, const PlatformConfig& cfg);

struct BillingLine {
  std::string deployment_id;
  double billed_duration_ms = 0.0;
  double memory_gb = 0.0;
  double cost_usd = 0.0;
  bool cold = false;
  int64_t trace_id = -1;

  bool operator==(const BillingLine&) const = default;
};

// Rounds the execution up to the billing granularity and prices it.
// Throws std::invalid_argument on negative wall time.
BillingLine Bill(double wall_ms, bool cold, int memory_mb, const PlatformConfig& cfg);

}  // namespace fusesim
