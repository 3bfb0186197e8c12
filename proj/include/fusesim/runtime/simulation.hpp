#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusesim/domain/types.hpp"
#include "fusesim/platform/cost_model.hpp"
#include "fusesim/platform/deployment.hpp"
#include "fusesim/platform/event_queue.hpp"

namespace fusesim {

inline constexpr std::string_view kExternalCaller = "EXTERNAL";

struct ExecutionContext {
  int64_t trace_id = -1;
  std::string group_id;
  std::string task;
  int depth = 0;
  Micros entered{0};
};

// One task execution.
struct InvocationRecord {
  int64_t trace_id = -1;
  std::string caller;  // kExternalCaller for the request root
  std::string callee;
  CallMode mode = CallMode::kSync;
  bool local = false;
  std::string group_id;
  int memory_mb = 0;
  bool cold = false;
  Micros start{0};
  Micros end{0};
  double wall_ms = 0.0;
  int64_t billing_line = -1;  // index into TelemetryLog::billing
  int64_t execution_id = -1;  // function execution that ran this task

  bool operator==(const InvocationRecord&) const = default;
};

struct RequestOutcome {
  int64_t trace_id = -1;
  std::string root;
  Micros arrival{0};
  Micros response{0};
  double rr_ms = 0.0;
  double cost_usd = 0.0;  // every billing line of the trace, async work included

  bool operator==(const RequestOutcome&) const = default;
};

// Everything one drained measurement window produced.
struct TelemetryLog {
  std::vector<InvocationRecord> records;
  std::vector<BillingLine> billing;
  std::vector<RequestOutcome> requests;
};

struct RequestResult {
  double rr_ms = 0.0;
  std::vector<InvocationRecord> records;
  std::vector<BillingLine> billing;
};

struct Dispatch {
  bool local = false;
  std::string target_group;  // the executing group for local calls
};

// LOCAL iff the callee is a member of the executing group, else REMOTE to
// the callee's home. Throws ConfigError when the callee has no home.
Dispatch DispatchCall(const ExecutionContext& ctx, const CallEdge& edge, const FusionSetup& setup);

// One simulated world: platform state, clock and the telemetry log.
class Simulation {
 public:
  Simulation(AppSpec app, PlatformConfig cfg);

  // Validates `setup` and routes subsequent arrivals through it. Only legal
  // while no request is in flight.
  void ApplySetup(const FusionSetup& setup);
  const FusionSetup& setup() const { return setup_; }

  // Queues an external request; throws ConfigError for a non-root task.
  int64_t Submit(const std::string& root, Micros arrival);
  void ScheduleFlush(Micros at);

  void Run();
  Micros now() const { return queue_.now(); }

  // Submits one request, drains the world and returns that trace.
  RequestResult HandleExternalRequest(const std::string& root, Micros arrival);

  // Hands over the log accumulated since the last call. The world must be
  // drained.
  TelemetryLog TakeLog();
  const TelemetryLog& log() const { return log_; }

  const AppSpec& app() const { return app_; }
  const PlatformConfig& config() const { return cfg_; }
  Platform& platform() { return platform_; }

 private:
  struct Frame {
    const TaskSpec* task = nullptr;
    size_t next_call = 0;
    bool body_done = false;
    size_t record = 0;
  };
  struct Deferred {
    std::string callee;
    std::string caller;
  };
  struct Execution {
    int64_t id = -1;
    int64_t trace_id = -1;
    std::string group_id;
    Deployment* deployment = nullptr;
    int memory_mb = 0;
    int instance_id = -1;
    bool cold = false;
    Micros ready{0};
    std::vector<Frame> stack;
    std::deque<Deferred> deferred;
    std::vector<size_t> records;
    std::optional<int64_t> parent;
    std::optional<size_t> request;  // set on the execution that answers the client
  };

  void Arrive(int64_t trace_id, const std::string& group_id, const std::string& task, const std::string& caller,
              CallMode mode, std::optional<int64_t> parent, std::optional<size_t> request);
  void Advance(int64_t execution_id);
  void PushFrame(Execution& exec, const std::string& task, const std::string& caller, CallMode mode, bool local);
  void Finish(Execution& exec);

  AppSpec app_;
  PlatformConfig cfg_;
  FusionSetup setup_;
  bool has_setup_ = false;
  Platform platform_;
  EventQueue queue_;
  TelemetryLog log_;
  std::map<int64_t, Execution> executions_;
  int64_t next_trace_ = 0;
  int64_t next_execution_ = 0;
};

}  // namespace fusesim
