// fusesim command line: run, compare, oracle, validate.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fusesim/domain/json_io.hpp"
#include "fusesim/domain/notation.hpp"
#include "fusesim/domain/validation.hpp"
#include "fusesim/experiment/experiment.hpp"
#include "fusesim/experiment/reports.hpp"
#include "fusesim/optimizer/oracle.hpp"

namespace fusesim {
namespace {

enum ExitCode { kOk = 0, kUsage = 2, kConfig = 3, kIo = 4, kMissingPrior = 5, kLimit = 6, kInternal = 70 };

int Fail(int code, const std::string& category, const std::string& message) {
  std::cerr << nlohmann::json{{"error", category}, {"message", message}}.dump() << '\n';
  return code;
}

struct CommonArgs {
  std::string app = "tree";
  std::string platform;
  uint64_t seed = 1;
};

int RunVerb(const std::string& config_path, bool quiet) {
  const ExperimentConfig config = LoadExperimentConfig(config_path);
  const ExperimentReport report = RunExperiment(config);
  if (!quiet) WriteSummaryCsv(std::cout, report.runs);
  for (const auto& file : report.files) std::cerr << "wrote " << file.string() << '\n';
  return kOk;
}

int CompareVerb(const CommonArgs& common, const std::vector<std::string>& notations, const std::string& protocol,
                const std::string& output_dir) {
  const AppSpec app = ResolveApp(common.app);
  const PlatformConfig cfg = ResolvePlatform(common.platform);
  std::vector<LabeledSetup> setups;
  for (size_t i = 0; i < notations.size(); ++i) {
    FusionSetup setup = ParseSetupNotation(notations[i], app, cfg.default_memory_mb);
    RequireValidSetup(setup, app, &cfg);
    setups.push_back({"S" + std::to_string(i + 1), std::move(setup)});
  }
  const std::vector<SetupRun> runs = CompareSetups(app, setups, ParseProtocol(protocol), cfg, common.seed);
  WriteSummaryCsv(std::cout, runs);
  if (!output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) throw IoError("cannot create '" + output_dir + "': " + ec.message());
    std::ostringstream summary, requests, billing;
    WriteSummaryCsv(summary, runs);
    WriteRequestsCsv(requests, runs);
    WriteRunBillingCsv(billing, runs);
    WriteTextFile(std::filesystem::path(output_dir) / "summary.csv", summary.str());
    WriteTextFile(std::filesystem::path(output_dir) / "requests.csv", requests.str());
    WriteTextFile(std::filesystem::path(output_dir) / "billing.csv", billing.str());
  }
  return kOk;
}

int OracleVerb(const CommonArgs& common, int requests, const std::string& objective_name) {
  const AppSpec app = ResolveApp(common.app);
  const PlatformConfig cfg = ResolvePlatform(common.platform);
  const Objective objective = ObjectiveFromJson(objective_name);
  ScheduleOptions options;
  options.opt_requests = requests;
  const WorkloadSchedule schedule = MakeSchedule(Protocol::kOpt, app, common.seed, options);
  const OracleResult result = BruteForceOptimal(app, schedule, cfg, objective);
  nlohmann::json out{{"notation", FormatSetupWithMemory(result.setup)},
                     {"setup", result.setup},
                     {"objective", ObjectiveToJson(objective)},
                     {"objective_value", result.objective_value},
                     {"evaluated", result.evaluated},
                     {"snapshot", SnapshotToJson(result.snapshot)}};
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int ValidateVerb(const std::string& path, std::string kind, const std::string& app_ref) {
  const nlohmann::json j = ReadJsonFile(path);
  if (kind.empty()) {
    if (j.is_object() && j.contains("tasks")) {
      kind = "app";
    } else if (j.is_object() && j.contains("protocol")) {
      kind = "experiment";
    } else if (j.is_string() || (j.is_object() && (j.contains("groups") || j.contains("notation")))) {
      kind = "setup";
    } else {
      kind = "platform";
    }
  }

  nlohmann::json out{{"file", path}, {"kind", kind}};
  if (kind == "app") {
    AppSpec app;
    try {
      app = j.get<AppSpec>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("app: ") + e.what());
    }
    std::vector<std::string> violations;
    for (const auto& v : ValidateApp(app)) violations.push_back(v.ToString());
    if (!violations.empty()) {
      out["violations"] = violations;
      return Fail(kConfig, "config", out.dump());
    }
    out["tasks"] = app.tasks.size();
  } else if (kind == "platform") {
    LoadPlatformConfig(path);
  } else if (kind == "experiment") {
    const ExperimentConfig config = LoadExperimentConfig(path);
    ResolveApp(config.app);
    ResolvePlatform(config.platform);
    out["config"] = ExperimentConfigToJson(config);
  } else if (kind == "setup") {
    const AppSpec app = ResolveApp(app_ref);
    const FusionSetup setup = SetupFromJson(j, app);
    std::vector<std::string> violations;
    for (const auto& v : ValidateSetup(setup, app)) violations.push_back(v.ToString());
    if (!violations.empty()) {
      out["violations"] = violations;
      return Fail(kConfig, "config", out.dump());
    }
    out["notation"] = FormatSetupWithMemory(setup);
  } else {
    throw ConfigError("unknown kind '" + kind + "'");
  }
  out["valid"] = true;
  std::cout << out.dump() << '\n';
  return kOk;
}

int Main(int argc, char** argv) {
  CLI::App cli{"Function fusion simulator and deployment optimizer"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", "fusesim 1.0");

  std::string run_config;
  bool quiet = false;
  auto* run = cli.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("config", run_config, "Experiment config file")->required();
  run->add_flag("--quiet", quiet, "Do not print the summary table");

  CommonArgs compare_args;
  std::vector<std::string> notations;
  std::string protocol = "COLD";
  std::string output_dir;
  auto* compare = cli.add_subcommand("compare", "Replay one workload against several setups");
  compare->add_option("--app", compare_args.app, "Builtin app (tree, iot, web) or app JSON file")->required();
  compare->add_option("--setup", notations, "Setup notation, e.g. \"(A,B)@256-(C)\"; repeatable")->required();
  compare->add_option("--protocol", protocol, "OPT, COLD or SCALE")->capture_default_str();
  compare->add_option("--seed", compare_args.seed, "Workload seed")->capture_default_str();
  compare->add_option("--platform", compare_args.platform, "Platform config JSON");
  compare->add_option("--output", output_dir, "Also write summary.csv, requests.csv and billing.csv here");

  CommonArgs oracle_args;
  int oracle_requests = 100;
  std::string objective_name = "min_cost";
  auto* oracle = cli.add_subcommand("oracle", "Exhaustive search over all setups of a small app");
  oracle->add_option("--app", oracle_args.app, "Builtin app or app JSON file")->required();
  oracle->add_option("--requests", oracle_requests, "Requests per evaluated setup")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  oracle->add_option("--objective", objective_name, "min_cost or weighted")->capture_default_str();
  oracle->add_option("--seed", oracle_args.seed, "Workload seed")->capture_default_str();
  oracle->add_option("--platform", oracle_args.platform, "Platform config JSON");

  std::string validate_path, validate_kind, validate_app = "tree";
  auto* validate = cli.add_subcommand("validate", "Check an app, platform, experiment or setup file");
  validate->add_option("file", validate_path, "JSON file")->required();
  validate->add_option("--kind", validate_kind, "app, platform, experiment or setup (guessed when omitted)")
      ->check(CLI::IsMember({"app", "platform", "experiment", "setup"}));
  validate->add_option("--app", validate_app, "App a setup file refers to")->capture_default_str();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    return Fail(kUsage, "usage", e.what());
  }

  try {
    if (*run) return RunVerb(run_config, quiet);
    if (*compare) return CompareVerb(compare_args, notations, protocol, output_dir);
    if (*oracle) return OracleVerb(oracle_args, oracle_requests, objective_name);
    if (*validate) return ValidateVerb(validate_path, validate_kind, validate_app);
  } catch (const MissingPriorError& e) {
    return Fail(kMissingPrior, "missing_prior", e.what());
  } catch (const OracleLimitError& e) {
    return Fail(kLimit, "limit", e.what());
  } catch (const IoError& e) {
    return Fail(kIo, "io", e.what());
  } catch (const ConfigError& e) {
    return Fail(kConfig, "config", e.what());
  } catch (const std::exception& e) {
    return Fail(kInternal, "internal", e.what());
  }
  return kUsage;
}

}  // namespace
}  // namespace fusesim

int main(int argc, char** argv) { return fusesim::Main(argc, argv); }
