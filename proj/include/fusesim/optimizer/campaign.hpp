#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusesim/domain/types.hpp"
#include "fusesim/optimizer/csp1.hpp"
#include "fusesim/optimizer/infra_optimizer.hpp"
#include "fusesim/optimizer/objective.hpp"
#include "fusesim/optimizer/path_optimizer.hpp"
#include "fusesim/runtime/simulation.hpp"
#include "fusesim/telemetry/metrics.hpp"

namespace fusesim {

enum class Phase { kPath, kInfra, kStable };

std::string_view ToString(Phase phase);

struct OptimizerState {
  Phase phase = Phase::kPath;
  std::map<std::string, MetricsSnapshot> tried;  // setup id -> snapshot
  std::string best_setup_id;
  std::map<std::string, std::vector<int>> pending_sweep;  // group -> sizes not yet tried
  int csp1_small_runs = 0;
  int64_t next_run_requests = 0;

  // Phases only move forward; throws std::logic_error otherwise.
  void Advance(Phase next);
  // Forget everything, e.g. after the application changed.
  void Reset();
};

struct CampaignOptions {
  Objective objective;
  Cadence cadence = Cadence::kFixed;
  Csp1Params csp1;
  uint64_t seed = 1;
  int64_t window_requests = 1000;  // fixed cadence
  double request_spacing_ms = 100.0;
  int64_t max_window_requests = 50000;  // cap on CSP-1 sampling windows
  bool keep_logs = true;
};

struct CampaignEntry {
  std::string setup_id;
  Phase phase = Phase::kPath;
  std::string notation;  // with @memory suffixes
  FusionSetup setup;
  MetricsSnapshot snapshot;
  std::string decision;  // baseline | accept | keep | revert | trial | adopt | reject
  std::string move;
  double delta = 0.0;  // relative change against the previous window
  int64_t next_interval = 0;  // requests before the next optimizer run
  TelemetryLog log;  // empty unless CampaignOptions::keep_logs
};

struct CampaignResult {
  std::vector<CampaignEntry> entries;
  FusionSetup base_setup;
  FusionSetup path_setup;
  FusionSetup final_setup;
  std::string path_setup_id;
  std::string final_setup_id;
  MetricsSnapshot base_snapshot;
  MetricsSnapshot path_snapshot;
  MetricsSnapshot final_snapshot;
  OptimizerState state;

  // Notations of the accepted or kept path-phase setups, starting at the base.
  std::vector<std::string> PathSequence() const;
};

// Runs the two-phase optimization on one simulated world, one measurement
// window per optimizer run, until STABLE. `start` defaults to every task in
// its own group at the default memory size.
CampaignResult RunCampaign(const AppSpec& app, const PlatformConfig& cfg, const CampaignOptions& options,
                           std::optional<FusionSetup> start = std::nullopt);

nlohmann::json CampaignToJson(const CampaignResult& result, const AppSpec& app);

// Reads back base/path/final setups written by CampaignToJson.
struct PriorCampaign {
  FusionSetup base_setup;
  FusionSetup path_setup;
  FusionSetup final_setup;
};
PriorCampaign PriorCampaignFromJson(const nlohmann::json& j, const AppSpec& app);

}  // namespace fusesim
