#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "fusesim/runtime/simulation.hpp"

namespace fusesim {

struct EdgeKey {
  std::string caller;  // kExternalCaller for request roots
  std::string callee;
  CallMode mode = CallMode::kSync;

  auto operator<=>(const EdgeKey& other) const {
    return std::tie(caller, callee, mode) <=> std::tie(other.caller, other.callee, other.mode);
  }
  bool operator==(const EdgeKey&) const = default;
};

struct EdgeStats {
  int64_t count = 0;
  std::vector<double> latency_ms;  // callee wall time per observation
};

struct NodeStats {
  int64_t executions = 0;
  std::vector<double> wall_ms;
  int64_t cold_count = 0;
  std::set<int> memory_sizes;
  // Record end minus the trace's first arrival; how late in a request the
  // task finishes.
  std::vector<double> completion_offset_ms;
};

// Call graph as observed in telemetry. Only tasks and edges that appear in
// records exist here.
struct AnnotatedCallGraph {
  std::map<std::string, NodeStats> nodes;
  std::map<EdgeKey, EdgeStats> edges;

  bool empty() const { return nodes.empty(); }
  bool HasEdge(const std::string& caller, const std::string& callee, CallMode mode) const;

  // True if some task (not EXTERNAL) calls `callee` with `mode`.
  bool CalledWith(const std::string& callee, CallMode mode) const;
  bool CalledExternally(const std::string& callee) const;

  // Distinct callees reached from `caller` with `mode`, sorted.
  std::vector<std::string> Callees(const std::string& caller, CallMode mode) const;
  std::vector<std::string> ExternalRoots() const;
};

// Empty input yields an empty graph.
AnnotatedCallGraph BuildCallGraph(const std::vector<InvocationRecord>& records);

nlohmann::json CallGraphToJson(const AnnotatedCallGraph& graph);

}  // namespace fusesim
