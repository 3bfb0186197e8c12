#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fusesim/domain/types.hpp"

namespace fusesim {

enum class InstanceState { kColdStarting, kIdle, kBusy };

struct Instance {
  int id = 0;
  InstanceState state = InstanceState::kColdStarting;
  Micros idle_since{0};
  int memory_mb = 128;
  bool retire_on_release = false;
};

struct Acquisition {
  int instance_id = 0;
  bool cold = false;
  Micros ready_at{0};
};

// The function that runs one fusion group. Instances scale without bound.
class Deployment {
 public:
  Deployment(std::string endpoint, FusionGroup group);

  // Reuses the most recently idled instance that has not timed out, else
  // starts a new one. Timed-out idle instances are reaped first.
  Acquisition Acquire(Micros now, const PlatformConfig& cfg);

  // COLD-STARTING -> BUSY once the sandbox is initialized.
  void MarkReady(int instance_id);

  // BUSY -> IDLE, or removal if the instance was flushed while busy.
  void Release(int instance_id, Micros now);

  // Drops idle instances; busy ones are removed when they finish.
  void Flush();

  const std::string& endpoint() const { return endpoint_; }
  const FusionGroup& group() const { return group_; }
  const std::vector<Instance>& instances() const { return instances_; }
  size_t CountIn(InstanceState state) const;

 private:
  Instance* Find(int instance_id);

  std::string endpoint_;
  FusionGroup group_;
  std::vector<Instance> instances_;
  int next_instance_id_ = 0;
};

// All deployments ever created in one simulated world. A group maps to the
// deployment of an identical earlier group (same members and memory) when
// one exists, so re-applying a setup finds its warm instances again.
class Platform {
 public:
  explicit Platform(PlatformConfig cfg);

  // Points every group of `setup` at its deployment, creating new ones for
  // unseen (members, memory) signatures.
  void ApplySetup(const FusionSetup& setup);

  Deployment& ForGroup(const std::string& group_id);
  const Deployment& ForGroup(const std::string& group_id) const;

  void FlushAllInstances();

  const PlatformConfig& config() const { return cfg_; }
  size_t deployment_count() const { return by_signature_.size(); }

  static std::string Signature(const FusionGroup& group);

 private:
  PlatformConfig cfg_;
  std::map<std::string, std::unique_ptr<Deployment>> by_signature_;
  std::map<std::string, Deployment*> active_;
};

}  // namespace fusesim
