#include "fusesim/workloads/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace fusesim {

std::string_view ToString(Protocol protocol) {
  switch (protocol) {
    case Protocol::kOpt:
      return "OPT";
    case Protocol::kCold:
      return "COLD";
    case Protocol::kScale:
      return "SCALE";
  }
  return "OPT";
}

Protocol ParseProtocol(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "OPT") return Protocol::kOpt;
  if (upper == "COLD") return Protocol::kCold;
  if (upper == "SCALE") return Protocol::kScale;
  throw ConfigError("unknown protocol '" + std::string(text) + "' (expected OPT, COLD or SCALE)");
}

namespace {

class RoundRobin {
 public:
  RoundRobin(const AppSpec& app, uint64_t seed) : ops_(app.ScheduledOperations()) {
    if (ops_.empty()) throw ConfigError("app has no roots to schedule");
    next_ = static_cast<size_t>(seed % ops_.size());
  }
  const std::string& Next() {
    const std::string& root = ops_[next_];
    next_ = (next_ + 1) % ops_.size();
    return root;
  }

 private:
  const std::vector<std::string>& ops_;
  size_t next_ = 0;
};

}  // namespace

WorkloadSchedule MakeSchedule(Protocol protocol, const AppSpec& app, uint64_t seed, const ScheduleOptions& o) {
  WorkloadSchedule schedule;
  schedule.protocol = protocol;
  schedule.seed = seed;
  RoundRobin roots(app, seed);

  switch (protocol) {
    case Protocol::kOpt:
      for (int i = 0; i < o.opt_requests; ++i) {
        schedule.requests.push_back({FromMillis(i * o.opt_spacing_ms), roots.Next(), false});
      }
      break;
    case Protocol::kCold:
      for (int batch = 0; batch < o.cold_batches; ++batch) {
        const Micros at = FromMillis(batch * o.cold_spacing_s * 1000.0);
        for (int i = 0; i < o.cold_batch_size; ++i) schedule.requests.push_back({at, roots.Next(), i == 0});
      }
      break;
    case Protocol::kScale: {
      if (!(o.scale_start_rps > 0.0) || !(o.scale_step_s > 0.0)) throw ConfigError("SCALE rates must be positive");
      const Micros end = FromMillis(o.scale_duration_s * 1000.0);
      Micros t{0};
      while (t < end) {
        schedule.requests.push_back({t, roots.Next(), false});
        const double step = std::floor(ToMillis(t) / 1000.0 / o.scale_step_s);
        const double rps = std::min(o.scale_start_rps + o.scale_step_rps * step, o.scale_max_rps);
        t += FromMillis(1000.0 / rps);
      }
      break;
    }
  }
  return schedule;
}

TelemetryLog Replay(Simulation& sim, const WorkloadSchedule& schedule, Micros start) {
  for (const auto& request : schedule.requests) {
    if (request.flush_before) sim.ScheduleFlush(start + request.arrival);
    sim.Submit(request.root, start + request.arrival);
  }
  sim.Run();
  return sim.TakeLog();
}

}  // namespace fusesim
