#include "fusesim/optimizer/campaign.hpp"

#include <algorithm>
#include <stdexcept>

#include "fusesim/domain/json_io.hpp"
#include "fusesim/domain/notation.hpp"
#include "fusesim/telemetry/call_graph.hpp"
#include "fusesim/workloads/schedule.hpp"

namespace fusesim {

std::string_view ToString(Phase phase) {
  switch (phase) {
    case Phase::kPath:
      return "PATH";
    case Phase::kInfra:
      return "INFRA";
    case Phase::kStable:
      return "STABLE";
  }
  return "PATH";
}

void OptimizerState::Advance(Phase next) {
  if (static_cast<int>(next) < static_cast<int>(phase)) {
    throw std::logic_error("optimizer phase cannot move from " + std::string(ToString(phase)) + " to " +
                           std::string(ToString(next)));
  }
  phase = next;
}

void OptimizerState::Reset() { *this = OptimizerState{}; }

std::vector<std::string> CampaignResult::PathSequence() const {
  std::vector<std::string> sequence;
  for (const auto& entry : entries) {
    if (entry.phase != Phase::kPath) continue;
    if (entry.decision == "baseline" || entry.decision == "accept" || entry.decision == "keep") {
      sequence.push_back(FormatSetup(entry.setup));
    }
  }
  return sequence;
}

namespace {

class CampaignRunner {
 public:
  CampaignRunner(const AppSpec& app, const PlatformConfig& cfg, const CampaignOptions& options)
      : app_(app),
        cfg_(cfg),
        options_(options),
        sim_(app, cfg),
        scheduler_(options.cadence, options.csp1, options.seed) {
    ValidateObjective(options_.objective);
    if (options_.window_requests <= 0) throw ConfigError("window_requests must be positive");
    next_window_ = options_.cadence == Cadence::kFixed ? options_.window_requests : options_.csp1.base_interval;
  }

  CampaignResult Run(FusionSetup start) {
    CampaignResult& r = result_;
    r.base_setup = start;
    CampaignEntry& base = Measure(start, Phase::kPath, "baseline", "");
    r.base_snapshot = base.snapshot;
    state_.best_setup_id = base.setup_id;

    FusionSetup best = start;
    MetricsSnapshot best_snapshot = base.snapshot;
    FusionSetup working = start;
    MetricsSnapshot working_snapshot = base.snapshot;
    AnnotatedCallGraph graph = BuildCallGraph(base.log.records);
    if (!options_.keep_logs) base.log = TelemetryLog{};

    std::set<PathMove> excluded;
    const size_t step_limit = 4 * app_.tasks.size() * app_.tasks.size() + 8;
    for (size_t step = 0; step < step_limit; ++step) {
      auto next = NextPathStep(graph, working, excluded);
      if (!next) break;
      CampaignEntry& entry = Measure(next->setup, Phase::kPath, "", next->move.ToString());
      const MetricsSnapshot& snap = entry.snapshot;
      if (Compare(snap, best_snapshot, options_.objective, r.base_snapshot) == Comparison::kBetter) {
        entry.decision = "accept";
        best = working = next->setup;
        best_snapshot = working_snapshot = snap;
        state_.best_setup_id = entry.setup_id;
      } else if (Compare(snap, working_snapshot, options_.objective, r.base_snapshot) == Comparison::kWorse) {
        entry.decision = "revert";
        excluded.insert(next->move);
      } else {
        entry.decision = "keep";
        working = next->setup;
        working_snapshot = snap;
      }
      graph = BuildCallGraph(entry.log.records);
      if (!options_.keep_logs) entry.log = TelemetryLog{};
    }

    r.path_setup = best;
    r.path_snapshot = best_snapshot;
    r.path_setup_id = state_.best_setup_id;
    state_.Advance(Phase::kInfra);

    const InfraPlan plan = InfraSweepPlan(best, cfg_);
    for (const auto& group : best.groups) {
      for (int size : cfg_.CandidateMemorySizes()) {
        if (size != group.memory_mb) state_.pending_sweep[group.id].push_back(size);
      }
    }
    GroupTrials trials;
    RecordGroupTrials(best, best_snapshot, trials);
    for (const auto& window : plan.windows) {
      const FusionSetup trial_setup = ApplyInfraWindow(best, window);
      CampaignEntry& entry = Measure(trial_setup, Phase::kInfra, "trial", "");
      RecordGroupTrials(trial_setup, entry.snapshot, trials);
      for (const auto& [group, size] : window) std::erase(state_.pending_sweep[group], size);
      if (!options_.keep_logs) entry.log = TelemetryLog{};
    }
    std::erase_if(state_.pending_sweep, [](const auto& kv) { return kv.second.empty(); });

    r.final_setup = best;
    r.final_snapshot = best_snapshot;
    r.final_setup_id = r.path_setup_id;
    if (!plan.empty()) {
      InfraSelection selection = InfraSelect(best, trials, cfg_, options_.objective);
      if (!selection.setup) throw std::logic_error("infra sweep finished with missing trials");
      CampaignEntry& entry = Measure(*selection.setup, Phase::kInfra, "", "select");
      if (Compare(entry.snapshot, best_snapshot, options_.objective, r.base_snapshot) == Comparison::kWorse) {
        entry.decision = "reject";
      } else {
        entry.decision = "adopt";
        r.final_setup = *selection.setup;
        r.final_snapshot = entry.snapshot;
        r.final_setup_id = entry.setup_id;
        state_.best_setup_id = entry.setup_id;
      }
      if (!options_.keep_logs) entry.log = TelemetryLog{};
    }
    state_.Advance(Phase::kStable);
    r.state = state_;
    return std::move(result_);
  }

 private:
  CampaignEntry& Measure(const FusionSetup& setup, Phase phase, std::string decision, std::string move) {
    sim_.ApplySetup(setup);
    ScheduleOptions schedule_options;
    schedule_options.opt_requests = static_cast<int>(next_window_);
    schedule_options.opt_spacing_ms = options_.request_spacing_ms;
    const WorkloadSchedule schedule = MakeSchedule(Protocol::kOpt, app_, options_.seed, schedule_options);
    const Micros start = sim_.now() + FromMillis(options_.request_spacing_ms);

    CampaignEntry entry;
    entry.setup_id = result_.entries.empty() ? "S-base" : "S-" + std::to_string(result_.entries.size());
    entry.phase = phase;
    entry.notation = FormatSetupWithMemory(setup);
    entry.setup = setup;
    entry.log = Replay(sim_, schedule, start);
    entry.snapshot = Snapshot(entry.log, std::to_string(result_.entries.size()), entry.setup_id);
    entry.decision = std::move(decision);
    entry.move = std::move(move);
    if (!result_.entries.empty()) entry.delta = RelativeChange(result_.entries.back().snapshot, entry.snapshot);

    int64_t interval = options_.cadence == Cadence::kFixed ? options_.window_requests : scheduler_.Next(entry.delta);
    interval = std::min(interval, options_.max_window_requests);
    entry.next_interval = interval;
    next_window_ = interval;
    state_.csp1_small_runs = scheduler_.small_run_count();
    state_.next_run_requests = interval;
    state_.tried[entry.setup_id] = entry.snapshot;

    result_.entries.push_back(std::move(entry));
    return result_.entries.back();
  }

  const AppSpec& app_;
  const PlatformConfig& cfg_;
  const CampaignOptions& options_;
  Simulation sim_;
  Csp1Scheduler scheduler_;
  OptimizerState state_;
  CampaignResult result_;
  int64_t next_window_ = 0;
};

}  // namespace

CampaignResult RunCampaign(const AppSpec& app, const PlatformConfig& cfg, const CampaignOptions& options,
                           std::optional<FusionSetup> start) {
  CampaignRunner runner(app, cfg, options);
  return runner.Run(start ? *start : SingletonSetup(app, cfg.default_memory_mb));
}

nlohmann::json CampaignToJson(const CampaignResult& result, const AppSpec& app) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& entry : result.entries) {
    entries.push_back({{"setup_id", entry.setup_id},
                       {"phase", std::string(ToString(entry.phase))},
                       {"notation", entry.notation},
                       {"setup", entry.setup},
                       {"decision", entry.decision},
                       {"move", entry.move},
                       {"delta", std::isfinite(entry.delta) ? nlohmann::json(entry.delta) : nlohmann::json("inf")},
                       {"next_interval", entry.next_interval},
                       {"snapshot", SnapshotToJson(entry.snapshot)}});
  }
  return {{"app", app},
          {"entries", entries},
          {"base", {{"setup", result.base_setup}, {"notation", FormatSetupWithMemory(result.base_setup)}}},
          {"path",
           {{"setup_id", result.path_setup_id},
            {"setup", result.path_setup},
            {"notation", FormatSetupWithMemory(result.path_setup)}}},
          {"final",
           {{"setup_id", result.final_setup_id},
            {"setup", result.final_setup},
            {"notation", FormatSetupWithMemory(result.final_setup)}}},
          {"path_sequence", result.PathSequence()}};
}

PriorCampaign PriorCampaignFromJson(const nlohmann::json& j, const AppSpec& app) {
  try {
    PriorCampaign prior;
    prior.base_setup = SetupFromJson(j.at("base").at("setup"), app);
    prior.path_setup = SetupFromJson(j.at("path").at("setup"), app);
    prior.final_setup = SetupFromJson(j.at("final").at("setup"), app);
    return prior;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("prior campaign is malformed: ") + e.what());
  }
}

}  // namespace fusesim
