#include "fusesim/experiment/experiment.hpp"

#include <fstream>
#include <sstream>

#include "fusesim/domain/json_io.hpp"
#include "fusesim/domain/notation.hpp"
#include "fusesim/experiment/reports.hpp"
#include "fusesim/optimizer/path_optimizer.hpp"
#include "fusesim/workloads/apps.hpp"

namespace fusesim {

namespace {

std::string Resolve(const std::string& ref, const std::filesystem::path& base_dir) {
  if (ref.empty() || base_dir.empty()) return ref;
  const std::filesystem::path p(ref);
  return p.is_absolute() ? ref : (base_dir / p).lexically_normal().string();
}

}  // namespace

ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("experiment config must be an object");
  static const char* kFields[] = {"app",   "protocol",   "platform",       "objective",      "cadence",
                                  "seed",  "output_dir", "prior_campaign", "window_requests"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kFields), std::end(kFields), key) == std::end(kFields)) {
      throw ConfigError("experiment config: unknown field '" + key + "'");
    }
  }
  for (const char* required : {"app", "protocol", "seed", "output_dir"}) {
    if (!j.contains(required)) throw ConfigError(std::string("experiment config: missing field '") + required + "'");
  }

  ExperimentConfig config;
  try {
    config.app = j.at("app").get<std::string>();
    if (!IsBuiltinApp(config.app)) config.app = Resolve(config.app, base_dir);
    config.protocol = ParseProtocol(j.at("protocol").get<std::string>());
    const auto& seed = j.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<int64_t>() < 0)) throw ConfigError("experiment config: seed must be a non-negative integer");
    config.seed = j.at("seed").get<uint64_t>();
    config.output_dir = Resolve(j.at("output_dir").get<std::string>(), base_dir);
    if (j.contains("platform")) config.platform = Resolve(j.at("platform").get<std::string>(), base_dir);
    if (j.contains("objective")) config.objective = ObjectiveFromJson(j.at("objective"));
    if (j.contains("cadence")) config.cadence = ParseCadence(j.at("cadence").get<std::string>());
    if (j.contains("prior_campaign")) {
      config.prior_campaign = Resolve(j.at("prior_campaign").get<std::string>(), base_dir);
    }
    if (j.contains("window_requests")) config.window_requests = j.at("window_requests").get<int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  if (config.window_requests <= 0) throw ConfigError("experiment config: window_requests must be positive");
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  return ExperimentConfigFromJson(ReadJsonFile(path), path.parent_path());
}

nlohmann::json ExperimentConfigToJson(const ExperimentConfig& c) {
  nlohmann::json j{{"app", c.app},
                   {"protocol", std::string(ToString(c.protocol))},
                   {"objective", ObjectiveToJson(c.objective)},
                   {"cadence", std::string(ToString(c.cadence))},
                   {"seed", c.seed},
                   {"output_dir", c.output_dir.string()},
                   {"window_requests", c.window_requests}};
  if (!c.platform.empty()) j["platform"] = c.platform;
  if (!c.prior_campaign.empty()) j["prior_campaign"] = c.prior_campaign;
  return j;
}

AppSpec ResolveApp(const std::string& ref) { return IsBuiltinApp(ref) ? MakeBuiltinApp(ref) : LoadAppSpec(ref); }

PlatformConfig ResolvePlatform(const std::string& path) {
  if (path.empty()) return PlatformConfig{};
  return LoadPlatformConfig(path);
}

std::vector<SetupRun> CompareSetups(const AppSpec& app, const std::vector<LabeledSetup>& setups, Protocol protocol,
                                    const PlatformConfig& cfg, uint64_t seed) {
  const WorkloadSchedule schedule = MakeSchedule(protocol, app, seed);
  std::vector<SetupRun> runs;
  for (const auto& labeled : setups) {
    Simulation sim(app, cfg);
    sim.ApplySetup(labeled.setup);
    SetupRun run;
    run.setup_id = labeled.label;
    run.label = labeled.label;
    run.setup = labeled.setup;
    run.log = Replay(sim, schedule, Micros{0});
    run.snapshot = Snapshot(run.log, std::string(ToString(protocol)), run.setup_id);
    runs.push_back(std::move(run));
  }
  return runs;
}

std::vector<LabeledSetup> ComparisonSetups(const AppSpec& app, const PlatformConfig& cfg,
                                           const PriorCampaign& prior) {
  return {{"S-remote", SingletonSetup(app, cfg.default_memory_mb)},
          {"S-local", FusedSetup(app, cfg.default_memory_mb)},
          {"S-path", prior.path_setup},
          {"S-opt", prior.final_setup}};
}

namespace {

template <typename Fn>
std::filesystem::path WriteArtifact(const std::filesystem::path& dir, const std::string& name, Fn&& write) {
  std::ostringstream out;
  write(out);
  const std::filesystem::path path = dir / name;
  WriteTextFile(path, out.str());
  return path;
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  const AppSpec app = ResolveApp(config.app);
  const PlatformConfig cfg = ResolvePlatform(config.platform);
  ValidateObjective(config.objective);

  ExperimentReport report;
  nlohmann::json manifest;
  if (config.protocol == Protocol::kOpt) {
    CampaignOptions options;
    options.objective = config.objective;
    options.cadence = config.cadence;
    options.seed = config.seed;
    options.window_requests = config.window_requests;
    CampaignResult campaign = RunCampaign(app, cfg, options);
    manifest = CampaignToJson(campaign, app);
    for (auto& entry : campaign.entries) {
      SetupRun run;
      run.setup_id = entry.setup_id;
      run.label = std::string(ToString(entry.phase)) + ":" + entry.decision;
      run.setup = entry.setup;
      run.snapshot = entry.snapshot;
      run.log = std::move(entry.log);
      report.runs.push_back(std::move(run));
    }
    report.campaign = std::move(campaign);
  } else {
    if (config.prior_campaign.empty() || !std::filesystem::exists(config.prior_campaign)) {
      throw MissingPriorError(std::string(ToString(config.protocol)) +
                              " compares against the setups of an OPT campaign; run the OPT protocol for this app "
                              "first and set prior_campaign to its campaign.json" +
                              (config.prior_campaign.empty() ? "" : " (not found: " + config.prior_campaign + ")"));
    }
    const PriorCampaign prior = PriorCampaignFromJson(ReadJsonFile(config.prior_campaign), app);
    report.runs = CompareSetups(app, ComparisonSetups(app, cfg, prior), config.protocol, cfg, config.seed);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& run : report.runs) {
      rows.push_back({{"setup_id", run.setup_id},
                      {"notation", FormatSetupWithMemory(run.setup)},
                      {"setup", run.setup},
                      {"snapshot", SnapshotToJson(run.snapshot)}});
    }
    manifest = {{"protocol", std::string(ToString(config.protocol))}, {"seed", config.seed}, {"setups", rows}};
  }

  const auto& dir = config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  const std::string manifest_name = config.protocol == Protocol::kOpt ? "campaign.json" : "comparison.json";
  report.files.push_back(
      WriteArtifact(dir, manifest_name, [&](std::ostream& out) { out << manifest.dump(2) << '\n'; }));
  report.files.push_back(WriteArtifact(dir, "summary.csv", [&](std::ostream& out) { WriteSummaryCsv(out, report.runs); }));
  report.files.push_back(
      WriteArtifact(dir, "requests.csv", [&](std::ostream& out) { WriteRequestsCsv(out, report.runs); }));
  report.files.push_back(
      WriteArtifact(dir, "records.ndjson", [&](std::ostream& out) { WriteRunRecordsNdjson(out, report.runs); }));
  report.files.push_back(
      WriteArtifact(dir, "billing.csv", [&](std::ostream& out) { WriteRunBillingCsv(out, report.runs); }));
  return report;
}

}  // namespace fusesim
