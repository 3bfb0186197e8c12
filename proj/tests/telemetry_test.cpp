#include <gtest/gtest.h>

#include "fusesim/optimizer/path_optimizer.hpp"
#include "fusesim/runtime/simulation.hpp"
#include "fusesim/telemetry/call_graph.hpp"
#include "fusesim/telemetry/metrics.hpp"
#include "fusesim/workloads/apps.hpp"
#include "fusesim/workloads/schedule.hpp"
#include "test_util.hpp"

namespace fusesim {
namespace {

TelemetryLog RunOpt(const AppSpec& app, int requests) {
  Simulation sim(app, PlatformConfig{});
  sim.ApplySetup(SingletonSetup(app, 128));
  ScheduleOptions options;
  options.opt_requests = requests;
  return Replay(sim, MakeSchedule(Protocol::kOpt, app, 1, options), Micros{0});
}

MetricsSnapshot WithRequests(std::vector<double> rr, std::vector<double> cost) {
  TelemetryLog log;
  for (size_t i = 0; i < rr.size(); ++i) {
    log.requests.push_back({static_cast<int64_t>(i), "A", Micros{0}, FromMillis(rr[i]), rr[i], cost[i]});
    BillingLine line;
    line.deployment_id = "g0";
    line.cost_usd = cost[i];
    line.trace_id = static_cast<int64_t>(i);
    log.billing.push_back(line);
  }
  return Snapshot(log, "w");
}

TEST(CallGraph, AggregatesRepeatedEdges) {
  std::vector<InvocationRecord> records;
  for (int i = 0; i < 1000; ++i) {
    InvocationRecord root;
    root.trace_id = i;
    root.caller = std::string(kExternalCaller);
    root.callee = "A";
    InvocationRecord child = root;
    child.caller = "A";
    child.callee = "B";
    child.wall_ms = 5;
    records.push_back(root);
    records.push_back(child);
  }
  const AnnotatedCallGraph g = BuildCallGraph(records);
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges.at({"A", "B", CallMode::kSync}).count, 1000);
  EXPECT_TRUE(g.HasEdge("A", "B", CallMode::kSync));
  EXPECT_FALSE(g.HasEdge("A", "B", CallMode::kAsync));
  EXPECT_TRUE(BuildCallGraph({}).empty());
}

TEST(CallGraph, TreeSplitsIntoSyncAndAsyncSides) {
  const AnnotatedCallGraph g = BuildCallGraph(RunOpt(MakeTreeApp(), 20).records);
  EXPECT_EQ(g.nodes.size(), 7u);
  EXPECT_EQ(g.Callees("A", CallMode::kSync), (std::vector<std::string>{"B"}));
  EXPECT_EQ(g.Callees("B", CallMode::kSync), (std::vector<std::string>{"D", "E"}));
  EXPECT_EQ(g.Callees("A", CallMode::kAsync), (std::vector<std::string>{"C"}));
  EXPECT_EQ(g.Callees("C", CallMode::kAsync), (std::vector<std::string>{"F", "G"}));
  EXPECT_TRUE(g.Callees("C", CallMode::kSync).empty());
  EXPECT_TRUE(g.Callees("B", CallMode::kAsync).empty());
}

TEST(CallGraph, WebHasThreeExternalRoots) {
  const AnnotatedCallGraph g = BuildCallGraph(RunOpt(MakeWebApp(), 30).records);
  EXPECT_EQ(g.ExternalRoots(), (std::vector<std::string>{"addToCart", "checkout", "frontend"}));
  EXPECT_TRUE(g.CalledExternally("frontend"));
  EXPECT_FALSE(g.CalledExternally("recommendations"));
}

TEST(Metrics, MedianAndPercentile) {
  EXPECT_DOUBLE_EQ(Median({300, 100, 200}), 200.0);
  EXPECT_DOUBLE_EQ(Median({1, 2, 3, 4}), 2.5);
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i);
  EXPECT_DOUBLE_EQ(PercentileNearestRank(v, 95), 95.0);
}

TEST(Metrics, SnapshotFigures) {
  const MetricsSnapshot s = WithRequests({100, 200, 300}, {0, 0, 0});
  EXPECT_DOUBLE_EQ(s.rr_med, 200.0);
  EXPECT_EQ(s.request_count, 3);
  EXPECT_NEAR(WithRequests({50}, {5.7e-5}).mean_cost_pmi, 57.0, 1e-9);
  EXPECT_THROW(Snapshot(TelemetryLog{}, "empty"), NoDataError);
}

TEST(Metrics, IdenticalWindowsGiveIdenticalSnapshots) {
  const MetricsSnapshot a = Snapshot(RunOpt(MakeIotApp(), 50), "w");
  const MetricsSnapshot b = Snapshot(RunOpt(MakeIotApp(), 50), "w");
  EXPECT_EQ(SnapshotToJson(a), SnapshotToJson(b));
  EXPECT_DOUBLE_EQ(RelativeChange(a, b), 0.0);
}

TEST(Metrics, RelativeChange) {
  const MetricsSnapshot base = WithRequests({100}, {100e-6});
  EXPECT_NEAR(RelativeChange(base, WithRequests({100}, {80e-6})), 0.2, 1e-12);
  EXPECT_NEAR(RelativeChange(base, WithRequests({150}, {100e-6})), 0.5, 1e-12);
}

TEST(Metrics, GroupAttribution) {
  const TelemetryLog log = RunOpt(MakeTreeApp(), 20);
  const MetricsSnapshot s = Snapshot(log, "w");
  double total = 0;
  for (const auto& [group, cost] : s.group_cost_usd) total += cost;
  double billed = 0;
  for (const auto& line : log.billing) billed += line.cost_usd;
  EXPECT_NEAR(total, billed, 1e-15);
  EXPECT_EQ(s.group_cost_usd.size(), 7u);
}

}  // namespace
}  // namespace fusesim
