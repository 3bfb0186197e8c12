#include "fusesim/runtime/simulation.hpp"

#include <stdexcept>

#include "fusesim/domain/validation.hpp"

namespace fusesim {

Dispatch DispatchCall(const ExecutionContext& ctx, const CallEdge& edge, const FusionSetup& setup) {
  const FusionGroup* current = setup.FindGroup(ctx.group_id);
  if (current != nullptr && current->Contains(edge.callee)) return {true, ctx.group_id};
  auto home = setup.home.find(edge.callee);
  if (home == setup.home.end() || setup.FindGroup(home->second) == nullptr) {
    throw ConfigError("task '" + edge.callee + "' has no home group");
  }
  return {false, home->second};
}

Simulation::Simulation(AppSpec app, PlatformConfig cfg) : app_(std::move(app)), cfg_(cfg), platform_(cfg) {
  RequireValidApp(app_);
  ValidatePlatformConfig(cfg_);
}

void Simulation::ApplySetup(const FusionSetup& setup) {
  if (!executions_.empty() || !queue_.empty()) throw std::logic_error("setup change while requests are in flight");
  RequireValidSetup(setup, app_, &cfg_);
  setup_ = setup;
  has_setup_ = true;
  platform_.ApplySetup(setup_);
}

int64_t Simulation::Submit(const std::string& root, Micros arrival) {
  if (!has_setup_) throw std::logic_error("no setup applied");
  if (!app_.IsRoot(root)) throw ConfigError("request rejected: '" + root + "' is not a root task");
  const int64_t trace = next_trace_++;
  const size_t request = log_.requests.size();
  log_.requests.push_back(RequestOutcome{trace, root, arrival, arrival, 0.0, 0.0});
  const std::string group = setup_.home.at(root);
  queue_.Schedule(arrival, [this, trace, group, root, request] {
    Arrive(trace, group, root, std::string(kExternalCaller), CallMode::kSync, std::nullopt, request);
  });
  return trace;
}

void Simulation::ScheduleFlush(Micros at) {
  queue_.Schedule(at, [this] { platform_.FlushAllInstances(); });
}

void Simulation::Run() { queue_.RunUntilEmpty(); }

void Simulation::Arrive(int64_t trace_id, const std::string& group_id, const std::string& task,
                        const std::string& caller, CallMode mode, std::optional<int64_t> parent,
                        std::optional<size_t> request) {
  Deployment& deployment = platform_.ForGroup(group_id);
  const Acquisition acquired = deployment.Acquire(now(), cfg_);

  const int64_t id = next_execution_++;
  Execution& exec = executions_[id];
  exec.id = id;
  exec.trace_id = trace_id;
  exec.group_id = group_id;
  exec.deployment = &deployment;
  exec.memory_mb = deployment.group().memory_mb;
  exec.instance_id = acquired.instance_id;
  exec.cold = acquired.cold;
  exec.ready = acquired.ready_at;
  exec.parent = parent;
  exec.request = request;

  PushFrame(exec, task, caller, mode, false);
  log_.records[exec.records.front()].cold = exec.cold;

  const double handler_ms = exec.cold ? cfg_.handler_cold_overhead_ms : cfg_.handler_warm_overhead_ms;
  if (exec.cold) {
    queue_.Schedule(exec.ready, [&deployment, instance = exec.instance_id] { deployment.MarkReady(instance); });
  }
  queue_.Schedule(exec.ready + FromMillis(handler_ms), [this, id] { Advance(id); });
}

void Simulation::PushFrame(Execution& exec, const std::string& task, const std::string& caller, CallMode mode,
                           bool local) {
  const TaskSpec* spec = app_.FindTask(task);
  if (spec == nullptr) throw ConfigError("unknown task '" + task + "'");
  InvocationRecord record;
  record.trace_id = exec.trace_id;
  record.caller = caller;
  record.callee = task;
  record.mode = mode;
  record.local = local;
  record.group_id = exec.group_id;
  record.memory_mb = exec.memory_mb;
  record.start = now();
  record.end = now();
  record.execution_id = exec.id;
  exec.records.push_back(log_.records.size());
  exec.stack.push_back(Frame{spec, 0, false, log_.records.size()});
  log_.records.push_back(std::move(record));
}

void Simulation::Advance(int64_t execution_id) {
  Execution& exec = executions_.at(execution_id);
  while (true) {
    if (exec.stack.empty()) {
      if (exec.deferred.empty()) {
        Finish(exec);
        return;
      }
      Deferred next = std::move(exec.deferred.front());
      exec.deferred.pop_front();
      PushFrame(exec, next.callee, next.caller, CallMode::kAsync, true);
      continue;
    }

    Frame& frame = exec.stack.back();
    if (!frame.body_done) {
      frame.body_done = true;
      const Micros body = FromMillis(TaskComputeDuration(*frame.task, exec.memory_mb, cfg_));
      if (body.count() > 0) {
        queue_.Schedule(now() + body, [this, execution_id] { Advance(execution_id); });
        return;
      }
      continue;
    }

    if (frame.next_call == frame.task->calls.size()) {
      InvocationRecord& record = log_.records[frame.record];
      record.end = now();
      record.wall_ms = ToMillis(record.end - record.start);
      exec.stack.pop_back();
      continue;
    }

    const CallEdge& edge = frame.task->calls[frame.next_call++];
    const std::string caller = frame.task->id;
    ExecutionContext ctx{exec.trace_id, exec.group_id, caller, static_cast<int>(exec.stack.size()) - 1, exec.ready};
    const Dispatch dispatch = DispatchCall(ctx, edge, setup_);

    if (dispatch.local) {
      if (edge.mode == CallMode::kSync) {
        PushFrame(exec, edge.callee, caller, CallMode::kSync, true);
      } else {
        exec.deferred.push_back(Deferred{edge.callee, caller});
      }
      continue;
    }

    const Micros child_arrival = now() + FromMillis(cfg_.remote_sync_overhead_ms);
    const int64_t trace = exec.trace_id;
    const std::string target = dispatch.target_group;
    const std::string callee = edge.callee;
    if (edge.mode == CallMode::kSync) {
      queue_.Schedule(child_arrival, [this, trace, target, callee, caller, execution_id] {
        Arrive(trace, target, callee, caller, CallMode::kSync, execution_id, std::nullopt);
      });
      return;  // resumed by the child's Finish
    }
    queue_.Schedule(child_arrival, [this, trace, target, callee, caller] {
      Arrive(trace, target, callee, caller, CallMode::kAsync, std::nullopt, std::nullopt);
    });
    queue_.Schedule(now() + FromMillis(cfg_.remote_async_dispatch_ms),
                    [this, execution_id] { Advance(execution_id); });
    return;
  }
}

void Simulation::Finish(Execution& exec) {
  const Micros finish = now();
  BillingLine line = Bill(ToMillis(finish - exec.ready), exec.cold, exec.memory_mb, cfg_);
  line.deployment_id = exec.group_id;
  line.trace_id = exec.trace_id;
  const int64_t line_index = static_cast<int64_t>(log_.billing.size());
  log_.billing.push_back(std::move(line));
  for (size_t index : exec.records) log_.records[index].billing_line = line_index;

  exec.deployment->Release(exec.instance_id, finish);

  if (exec.request) {
    RequestOutcome& outcome = log_.requests[*exec.request];
    outcome.response = finish;
    outcome.rr_ms = ToMillis(finish - outcome.arrival);
  }
  if (exec.parent) {
    const int64_t parent = *exec.parent;
    queue_.Schedule(finish, [this, parent] { Advance(parent); });
  }
  executions_.erase(exec.id);
}

RequestResult Simulation::HandleExternalRequest(const std::string& root, Micros arrival) {
  const int64_t trace = Submit(root, arrival);
  Run();
  RequestResult result;
  for (const auto& request : log_.requests) {
    if (request.trace_id == trace) result.rr_ms = request.rr_ms;
  }
  for (const auto& record : log_.records) {
    if (record.trace_id == trace) result.records.push_back(record);
  }
  for (const auto& line : log_.billing) {
    if (line.trace_id == trace) result.billing.push_back(line);
  }
  return result;
}

TelemetryLog Simulation::TakeLog() {
  if (!executions_.empty() || !queue_.empty()) throw std::logic_error("log taken while requests are in flight");
  std::map<int64_t, double> cost_by_trace;
  for (const auto& line : log_.billing) cost_by_trace[line.trace_id] += line.cost_usd;
  for (auto& request : log_.requests) request.cost_usd = cost_by_trace[request.trace_id];
  TelemetryLog taken = std::move(log_);
  log_ = TelemetryLog{};
  return taken;
}

}  // namespace fusesim
