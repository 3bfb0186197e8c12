#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fusesim/domain/types.hpp"
#include "fusesim/runtime/simulation.hpp"

namespace fusesim {

enum class Protocol { kOpt, kCold, kScale };

std::string_view ToString(Protocol protocol);
// Accepts "OPT", "COLD", "SCALE" in any case; ConfigError otherwise.
Protocol ParseProtocol(std::string_view text);

struct ScheduledRequest {
  Micros arrival{0};  // relative to the start of the replay
  std::string root;
  bool flush_before = false;  // shut down every instance just before arrival

  bool operator==(const ScheduledRequest&) const = default;
};

struct WorkloadSchedule {
  Protocol protocol = Protocol::kOpt;
  uint64_t seed = 0;
  std::vector<ScheduledRequest> requests;

  bool operator==(const WorkloadSchedule&) const = default;
};

struct ScheduleOptions {
  // OPT: constant 10 rps.
  int opt_requests = 1000;
  double opt_spacing_ms = 100.0;
  // COLD: one flushed request per batch.
  int cold_batches = 50;
  int cold_batch_size = 1;
  double cold_spacing_s = 60.0;
  // SCALE: start_rps, +step_rps every step_s, capped at max_rps.
  double scale_start_rps = 5.0;
  double scale_step_rps = 5.0;
  double scale_step_s = 2.0;
  double scale_max_rps = 40.0;
  double scale_duration_s = 20.0;
};

// Roots are drawn round-robin over the app's scheduled operations, starting
// at offset seed % operations.
WorkloadSchedule MakeSchedule(Protocol protocol, const AppSpec& app, uint64_t seed,
                              const ScheduleOptions& options = {});

// Submits the schedule shifted by `start`, drains the world and returns the
// window's log.
TelemetryLog Replay(Simulation& sim, const WorkloadSchedule& schedule, Micros start);

}  // namespace fusesim
