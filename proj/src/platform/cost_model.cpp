#include "fusesim/platform/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fusesim {

double VcpusForMemory(int memory_mb, const PlatformConfig& cfg) {
  return static_cast<double>(memory_mb) / static_cast<double>(cfg.vcpu_reference_mb);
}

double TaskCpuMillis(const TaskSpec& task, int memory_mb, const PlatformConfig& cfg) {
  if (task.cpu_work <= 0.0) return 0.0;
  const double lanes = std::min(VcpusForMemory(memory_mb, cfg), static_cast<double>(task.parallelism));
  return task.cpu_work / lanes;
}

double TaskComputeDuration(const TaskSpec& task, int memory_mb, const PlatformConfig& cfg) {
  return TaskCpuMillis(task, memory_mb, cfg) + task.TotalIoMillis();
}

BillingLine Bill(double wall_ms, bool cold, int memory_mb, const PlatformConfig& cfg) {
  if (wall_ms < 0.0) throw std::invalid_argument("negative wall time");
  double duration = wall_ms;
  if (cold && cfg.bill_cold_init) duration += cfg.platform_cold_init_ms;
  const double granularity = cfg.billing_granularity_ms;
  // Guard against 1001.0000000001-style float noise producing an extra unit.
  const double units = std::ceil(duration / granularity - 1e-9);
  BillingLine line;
  line.billed_duration_ms = std::max(0.0, units) * granularity;
  line.memory_gb = memory_mb / 1024.0;
  line.cost_usd = line.billed_duration_ms / 1000.0 * line.memory_gb * cfg.price_per_gb_s + cfg.price_per_request;
  line.cold = cold;
  return line;
}

}  // namespace fusesim
