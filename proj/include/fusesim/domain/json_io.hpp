#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fusesim/domain/types.hpp"

namespace fusesim {

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON mapping for the domain types. Field names match the struct members;
// call modes are "SYNC" / "ASYNC". Missing optional fields take the struct
// defaults, unknown fields are rejected.
void to_json(nlohmann::json& j, const IoCall& io);
void from_json(const nlohmann::json& j, IoCall& io);
void to_json(nlohmann::json& j, const CallEdge& edge);
void from_json(const nlohmann::json& j, CallEdge& edge);
void to_json(nlohmann::json& j, const TaskSpec& task);
void from_json(const nlohmann::json& j, TaskSpec& task);
void to_json(nlohmann::json& j, const AppSpec& app);
void from_json(const nlohmann::json& j, AppSpec& app);
void to_json(nlohmann::json& j, const FusionGroup& group);
void from_json(const nlohmann::json& j, FusionGroup& group);
void to_json(nlohmann::json& j, const FusionSetup& setup);
void from_json(const nlohmann::json& j, FusionSetup& setup);
void to_json(nlohmann::json& j, const PlatformConfig& cfg);
void from_json(const nlohmann::json& j, PlatformConfig& cfg);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

// Loaders validate what they read and throw ConfigError on bad content.
AppSpec LoadAppSpec(const std::filesystem::path& path);
PlatformConfig LoadPlatformConfig(const std::filesystem::path& path);

// Accepts either the structured form {"groups": [...], "home": {...}} or a
// bare {"notation": "(A,B)@128-(C)"}.
FusionSetup SetupFromJson(const nlohmann::json& j, const AppSpec& app, int default_memory_mb = 128);

}  // namespace fusesim
