#include "fusesim/domain/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "fusesim/domain/notation.hpp"
#include "fusesim/domain/validation.hpp"

namespace fusesim {

using nlohmann::json;

namespace {

void RequireObject(const json& j, std::string_view what, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto name : allowed) known = known || key == name;
    if (!known) throw ConfigError(std::string(what) + ": unknown field '" + key + "'");
  }
}

template <typename T>
void ReadOptional(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it != j.end()) out = it->template get<T>();
}

template <typename T>
void ReadRequired(const json& j, const char* key, std::string_view what, T& out) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string(what) + ": missing field '" + key + "'");
  out = it->template get<T>();
}

}  // namespace

void to_json(json& j, const IoCall& io) {
  j = json{{"service", io.service}, {"latency_ms", io.latency_ms}, {"count", io.count}};
}

void from_json(const json& j, IoCall& io) {
  RequireObject(j, "io call", {"service", "latency_ms", "count"});
  ReadRequired(j, "service", "io call", io.service);
  ReadRequired(j, "latency_ms", "io call", io.latency_ms);
  ReadOptional(j, "count", io.count);
}

void to_json(json& j, const CallEdge& edge) {
  j = json{{"callee", edge.callee}, {"mode", std::string(ToString(edge.mode))}};
}

void from_json(const json& j, CallEdge& edge) {
  RequireObject(j, "call edge", {"callee", "mode"});
  ReadRequired(j, "callee", "call edge", edge.callee);
  std::string mode = "SYNC";
  ReadOptional(j, "mode", mode);
  auto parsed = ParseCallMode(mode);
  if (!parsed) throw ConfigError("call edge: mode must be SYNC or ASYNC, got '" + mode + "'");
  edge.mode = *parsed;
}

void to_json(json& j, const TaskSpec& task) {
  j = json{{"id", task.id},
           {"cpu_work", task.cpu_work},
           {"parallelism", task.parallelism},
           {"io_calls", task.io_calls},
           {"calls", task.calls}};
}

void from_json(const json& j, TaskSpec& task) {
  RequireObject(j, "task", {"id", "cpu_work", "parallelism", "io_calls", "calls"});
  ReadRequired(j, "id", "task", task.id);
  ReadOptional(j, "cpu_work", task.cpu_work);
  ReadOptional(j, "parallelism", task.parallelism);
  ReadOptional(j, "io_calls", task.io_calls);
  ReadOptional(j, "calls", task.calls);
}

void to_json(json& j, const AppSpec& app) {
  j = json{{"tasks", app.tasks}, {"roots", app.roots}};
  if (!app.operations.empty()) j["operations"] = app.operations;
}

void from_json(const json& j, AppSpec& app) {
  RequireObject(j, "app", {"tasks", "roots", "operations"});
  ReadRequired(j, "tasks", "app", app.tasks);
  ReadRequired(j, "roots", "app", app.roots);
  ReadOptional(j, "operations", app.operations);
}

void to_json(json& j, const FusionGroup& group) {
  j = json{{"id", group.id}, {"members", group.members}, {"memory_mb", group.memory_mb}};
}

void from_json(const json& j, FusionGroup& group) {
  RequireObject(j, "group", {"id", "members", "memory_mb"});
  ReadRequired(j, "id", "group", group.id);
  ReadRequired(j, "members", "group", group.members);
  ReadOptional(j, "memory_mb", group.memory_mb);
}

void to_json(json& j, const FusionSetup& setup) { j = json{{"groups", setup.groups}, {"home", setup.home}}; }

void from_json(const json& j, FusionSetup& setup) {
  RequireObject(j, "setup", {"groups", "home"});
  ReadRequired(j, "groups", "setup", setup.groups);
  ReadRequired(j, "home", "setup", setup.home);
}

void to_json(json& j, const PlatformConfig& cfg) {
  j = json{{"memory_sizes_mb", cfg.memory_sizes_mb},
           {"default_memory_mb", cfg.default_memory_mb},
           {"vcpu_reference_mb", cfg.vcpu_reference_mb},
           {"remote_sync_overhead_ms", cfg.remote_sync_overhead_ms},
           {"remote_async_dispatch_ms", cfg.remote_async_dispatch_ms},
           {"handler_warm_overhead_ms", cfg.handler_warm_overhead_ms},
           {"handler_cold_overhead_ms", cfg.handler_cold_overhead_ms},
           {"platform_cold_init_ms", cfg.platform_cold_init_ms},
           {"instance_idle_timeout_s", cfg.instance_idle_timeout_s},
           {"price_per_gb_s", cfg.price_per_gb_s},
           {"price_per_request", cfg.price_per_request},
           {"billing_granularity_ms", cfg.billing_granularity_ms},
           {"bill_cold_init", cfg.bill_cold_init}};
}

void from_json(const json& j, PlatformConfig& cfg) {
  RequireObject(j, "platform config",
                {"memory_sizes_mb", "default_memory_mb", "vcpu_reference_mb", "remote_sync_overhead_ms",
                 "remote_async_dispatch_ms", "handler_warm_overhead_ms", "handler_cold_overhead_ms",
                 "platform_cold_init_ms", "instance_idle_timeout_s", "price_per_gb_s", "price_per_request",
                 "billing_granularity_ms", "bill_cold_init"});
  ReadOptional(j, "memory_sizes_mb", cfg.memory_sizes_mb);
  ReadOptional(j, "default_memory_mb", cfg.default_memory_mb);
  ReadOptional(j, "vcpu_reference_mb", cfg.vcpu_reference_mb);
  ReadOptional(j, "remote_sync_overhead_ms", cfg.remote_sync_overhead_ms);
  ReadOptional(j, "remote_async_dispatch_ms", cfg.remote_async_dispatch_ms);
  ReadOptional(j, "handler_warm_overhead_ms", cfg.handler_warm_overhead_ms);
  ReadOptional(j, "handler_cold_overhead_ms", cfg.handler_cold_overhead_ms);
  ReadOptional(j, "platform_cold_init_ms", cfg.platform_cold_init_ms);
  ReadOptional(j, "instance_idle_timeout_s", cfg.instance_idle_timeout_s);
  ReadOptional(j, "price_per_gb_s", cfg.price_per_gb_s);
  ReadOptional(j, "price_per_request", cfg.price_per_request);
  ReadOptional(j, "billing_granularity_ms", cfg.billing_granularity_ms);
  ReadOptional(j, "bill_cold_init", cfg.bill_cold_init);
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

AppSpec LoadAppSpec(const std::filesystem::path& path) {
  AppSpec app;
  try {
    app = ReadJsonFile(path).get<AppSpec>();
  } catch (const json::exception& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
  RequireValidApp(app);
  return app;
}

PlatformConfig LoadPlatformConfig(const std::filesystem::path& path) {
  PlatformConfig cfg;
  try {
    cfg = ReadJsonFile(path).get<PlatformConfig>();
  } catch (const json::exception& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
  ValidatePlatformConfig(cfg);
  return cfg;
}

FusionSetup SetupFromJson(const json& j, const AppSpec& app, int default_memory_mb) {
  FusionSetup setup;
  try {
    if (j.is_string()) {
      setup = ParseSetupNotation(j.get<std::string>(), app, default_memory_mb);
    } else if (j.is_object() && j.contains("notation")) {
      RequireObject(j, "setup", {"notation"});
      setup = ParseSetupNotation(j.at("notation").get<std::string>(), app, default_memory_mb);
    } else {
      setup = j.get<FusionSetup>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("setup: ") + e.what());
  }
  RequireValidSetup(setup, app);
  return setup;
}

}  // namespace fusesim
