#include "fusesim/telemetry/call_graph.hpp"

#include <algorithm>

namespace fusesim {

bool AnnotatedCallGraph::HasEdge(const std::string& caller, const std::string& callee, CallMode mode) const {
  return edges.contains(EdgeKey{caller, callee, mode});
}

bool AnnotatedCallGraph::CalledWith(const std::string& callee, CallMode mode) const {
  for (const auto& [key, stats] : edges) {
    if (key.callee == callee && key.mode == mode && key.caller != kExternalCaller) return true;
  }
  return false;
}

bool AnnotatedCallGraph::CalledExternally(const std::string& callee) const {
  for (const auto& [key, stats] : edges) {
    if (key.callee == callee && key.caller == kExternalCaller) return true;
  }
  return false;
}

std::vector<std::string> AnnotatedCallGraph::Callees(const std::string& caller, CallMode mode) const {
  std::vector<std::string> out;
  for (const auto& [key, stats] : edges) {
    if (key.caller == caller && key.mode == mode) out.push_back(key.callee);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> AnnotatedCallGraph::ExternalRoots() const { return Callees(std::string(kExternalCaller), CallMode::kSync); }

AnnotatedCallGraph BuildCallGraph(const std::vector<InvocationRecord>& records) {
  AnnotatedCallGraph graph;
  std::map<int64_t, Micros> first_arrival;
  for (const auto& record : records) {
    auto [it, inserted] = first_arrival.emplace(record.trace_id, record.start);
    if (!inserted) it->second = std::min(it->second, record.start);
  }
  for (const auto& record : records) {
    NodeStats& node = graph.nodes[record.callee];
    ++node.executions;
    node.wall_ms.push_back(record.wall_ms);
    if (record.cold) ++node.cold_count;
    node.memory_sizes.insert(record.memory_mb);
    node.completion_offset_ms.push_back(ToMillis(record.end - first_arrival[record.trace_id]));

    EdgeStats& edge = graph.edges[EdgeKey{record.caller, record.callee, record.mode}];
    ++edge.count;
    edge.latency_ms.push_back(record.wall_ms);
  }
  return graph;
}

nlohmann::json CallGraphToJson(const AnnotatedCallGraph& graph) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [task, stats] : graph.nodes) {
    nodes.push_back({{"task", task},
                     {"executions", stats.executions},
                     {"cold_count", stats.cold_count},
                     {"memory_sizes", std::vector<int>(stats.memory_sizes.begin(), stats.memory_sizes.end())}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [key, stats] : graph.edges) {
    double mean = 0.0;
    for (double v : stats.latency_ms) mean += v;
    if (!stats.latency_ms.empty()) mean /= static_cast<double>(stats.latency_ms.size());
    edges.push_back({{"caller", key.caller},
                     {"callee", key.callee},
                     {"mode", std::string(ToString(key.mode))},
                     {"count", stats.count},
                     {"mean_latency_ms", mean}});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

}  // namespace fusesim
