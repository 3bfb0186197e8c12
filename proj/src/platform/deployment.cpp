#include "fusesim/platform/deployment.hpp"

#include <algorithm>
#include <stdexcept>

namespace fusesim {

Deployment::Deployment(std::string endpoint, FusionGroup group)
    : endpoint_(std::move(endpoint)), group_(std::move(group)) {}

Acquisition Deployment::Acquire(Micros now, const PlatformConfig& cfg) {
  const Micros timeout = FromMillis(cfg.instance_idle_timeout_s * 1000.0);
  std::erase_if(instances_, [&](const Instance& inst) {
    return inst.state == InstanceState::kIdle && inst.idle_since < now - timeout;
  });

  Instance* best = nullptr;
  for (auto& inst : instances_) {
    if (inst.state != InstanceState::kIdle) continue;
    if (best == nullptr || inst.idle_since > best->idle_since) best = &inst;
  }
  if (best != nullptr) {
    best->state = InstanceState::kBusy;
    return {best->id, false, now};
  }

  Instance fresh;
  fresh.id = next_instance_id_++;
  fresh.state = InstanceState::kColdStarting;
  fresh.memory_mb = group_.memory_mb;
  instances_.push_back(fresh);
  return {fresh.id, true, now + FromMillis(cfg.platform_cold_init_ms)};
}

Instance* Deployment::Find(int instance_id) {
  for (auto& inst : instances_) {
    if (inst.id == instance_id) return &inst;
  }
  return nullptr;
}

void Deployment::MarkReady(int instance_id) {
  Instance* inst = Find(instance_id);
  if (inst != nullptr && inst->state == InstanceState::kColdStarting) inst->state = InstanceState::kBusy;
}

void Deployment::Release(int instance_id, Micros now) {
  Instance* inst = Find(instance_id);
  if (inst == nullptr) throw std::logic_error("release of unknown instance in " + endpoint_);
  if (inst->retire_on_release) {
    std::erase_if(instances_, [&](const Instance& i) { return i.id == instance_id; });
    return;
  }
  inst->state = InstanceState::kIdle;
  inst->idle_since = now;
}

void Deployment::Flush() {
  std::erase_if(instances_, [](const Instance& inst) { return inst.state == InstanceState::kIdle; });
  for (auto& inst : instances_) inst.retire_on_release = true;
}

size_t Deployment::CountIn(InstanceState state) const {
  return std::count_if(instances_.begin(), instances_.end(),
                       [&](const Instance& inst) { return inst.state == state; });
}

Platform::Platform(PlatformConfig cfg) : cfg_(std::move(cfg)) {}

std::string Platform::Signature(const FusionGroup& group) {
  std::vector<std::string> members = group.members;
  std::sort(members.begin(), members.end());
  std::string signature = "(";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i > 0) signature += ',';
    signature += members[i];
  }
  return signature + ")@" + std::to_string(group.memory_mb);
}

void Platform::ApplySetup(const FusionSetup& setup) {
  active_.clear();
  for (const auto& group : setup.groups) {
    const std::string signature = Signature(group);
    auto it = by_signature_.find(signature);
    if (it == by_signature_.end()) {
      const std::string endpoint = "fn" + std::to_string(by_signature_.size());
      it = by_signature_.emplace(signature, std::make_unique<Deployment>(endpoint, group)).first;
    }
    active_[group.id] = it->second.get();
  }
}

Deployment& Platform::ForGroup(const std::string& group_id) {
  auto it = active_.find(group_id);
  if (it == active_.end()) throw ConfigError("no deployment for group '" + group_id + "'");
  return *it->second;
}

const Deployment& Platform::ForGroup(const std::string& group_id) const {
  auto it = active_.find(group_id);
  if (it == active_.end()) throw ConfigError("no deployment for group '" + group_id + "'");
  return *it->second;
}

void Platform::FlushAllInstances() {
  for (auto& [signature, deployment] : by_signature_) deployment->Flush();
}

}  // namespace fusesim
