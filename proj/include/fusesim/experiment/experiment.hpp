#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusesim/domain/types.hpp"
#include "fusesim/optimizer/campaign.hpp"
#include "fusesim/optimizer/csp1.hpp"
#include "fusesim/optimizer/objective.hpp"
#include "fusesim/runtime/simulation.hpp"
#include "fusesim/telemetry/metrics.hpp"
#include "fusesim/workloads/schedule.hpp"

namespace fusesim {

// COLD and SCALE runs need the setups an earlier OPT run produced.
class MissingPriorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string app = "tree";  // builtin name or path to an app JSON file
  Protocol protocol = Protocol::kOpt;
  std::string platform;  // optional path; empty means defaults
  Objective objective;
  Cadence cadence = Cadence::kFixed;
  uint64_t seed = 0;
  std::filesystem::path output_dir;
  std::string prior_campaign;  // campaign.json of an OPT run, for COLD and SCALE
  int64_t window_requests = 1000;
};

// Required fields: app, protocol, seed, output_dir. Relative paths are
// resolved against `base_dir`.
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);
nlohmann::json ExperimentConfigToJson(const ExperimentConfig& config);

AppSpec ResolveApp(const std::string& ref);
PlatformConfig ResolvePlatform(const std::string& path);

struct LabeledSetup {
  std::string label;  // e.g. S-remote
  FusionSetup setup;
};

struct SetupRun {
  std::string setup_id;
  std::string label;
  FusionSetup setup;
  MetricsSnapshot snapshot;
  TelemetryLog log;
};

// Replays the identical schedule against each setup, each in a fresh world.
std::vector<SetupRun> CompareSetups(const AppSpec& app, const std::vector<LabeledSetup>& setups, Protocol protocol,
                                    const PlatformConfig& cfg, uint64_t seed);

// The four COLD/SCALE comparison setups: S-remote, S-local, S-path, S-opt.
std::vector<LabeledSetup> ComparisonSetups(const AppSpec& app, const PlatformConfig& cfg,
                                           const PriorCampaign& prior);

struct ExperimentReport {
  std::vector<SetupRun> runs;  // one per measured setup, in order
  std::optional<CampaignResult> campaign;  // OPT only
  std::vector<std::filesystem::path> files;  // written artifacts
};

// Runs the configured protocol and writes the report bundle to output_dir:
// summary.csv, requests.csv, records.ndjson, billing.csv and either
// campaign.json (OPT) or comparison.json (COLD, SCALE).
ExperimentReport RunExperiment(const ExperimentConfig& config);

}  // namespace fusesim
