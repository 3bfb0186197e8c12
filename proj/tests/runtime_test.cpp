#include <gtest/gtest.h>

#include "fusesim/domain/notation.hpp"
#include "fusesim/optimizer/path_optimizer.hpp"
#include "fusesim/runtime/records_io.hpp"
#include "fusesim/runtime/simulation.hpp"
#include "test_util.hpp"

namespace fusesim {
namespace {

using testing::App;
using testing::Async;
using testing::QuietConfig;
using testing::Sync;
using testing::Task;

constexpr int kOneVcpu = 1650;

// Runs one request to warm every deployment on the path, then measures a
// second one.
RequestResult Warm(Simulation& sim, const std::string& root) {
  sim.HandleExternalRequest(root, sim.now());
  return sim.HandleExternalRequest(root, sim.now() + FromMillis(1000));
}

Simulation Make(const AppSpec& app, const PlatformConfig& cfg, const std::string& notation) {
  Simulation sim(app, cfg);
  sim.ApplySetup(ParseSetupNotation(notation, app, kOneVcpu));
  return sim;
}

TEST(Dispatch, MembershipDecidesLocality) {
  const AppSpec app = App({Task("A", 1, {Sync("B"), Sync("C")}), Task("B", 1), Task("C", 1)});
  const FusionSetup s = ParseSetupNotation("(A,B)-(C)", app);
  const ExecutionContext ctx{0, "g0", "A", 0, Micros{0}};
  const Dispatch b = DispatchCall(ctx, Sync("B"), s);
  EXPECT_TRUE(b.local);
  EXPECT_EQ(b.target_group, "g0");
  const Dispatch c = DispatchCall(ctx, Sync("C"), s);
  EXPECT_FALSE(c.local);
  EXPECT_EQ(c.target_group, "g1");
}

TEST(Dispatch, ReplicatedTaskRunsLocally) {
  const AppSpec app = App({Task("A", 1, {Sync("E")}), Task("D", 1, {Sync("E")}), Task("E", 1)}, {"A", "D"});
  FusionSetup s;
  s.groups = {{"g0", {"A", "E"}, 128}, {"g1", {"D", "E"}, 128}};
  s.home = {{"A", "g0"}, {"D", "g1"}, {"E", "g1"}};
  const Dispatch d = DispatchCall({0, "g0", "A", 0, Micros{0}}, Sync("E"), s);
  EXPECT_TRUE(d.local);
  EXPECT_EQ(d.target_group, "g0");
}

TEST(Execute, ZeroWorkWarmIsInstant) {
  const AppSpec app = App({Task("A", 0)});
  Simulation sim = Make(app, QuietConfig(), "(A)");
  EXPECT_DOUBLE_EQ(Warm(sim, "A").rr_ms, 0.0);
}

TEST(Execute, WarmHandlerOverhead) {
  const AppSpec app = App({Task("A", 40)});
  PlatformConfig cfg = QuietConfig();
  cfg.handler_warm_overhead_ms = 1.3;
  Simulation sim = Make(app, cfg, "(A)");
  EXPECT_NEAR(Warm(sim, "A").rr_ms, 41.3, 1e-9);
}

TEST(Execute, SyncLocalIsOneExecution) {
  const AppSpec app = App({Task("A", 10, {Sync("B")}), Task("B", 20)});
  Simulation sim = Make(app, QuietConfig(), "(A,B)");
  const RequestResult r = Warm(sim, "A");
  EXPECT_DOUBLE_EQ(r.rr_ms, 30.0);
  ASSERT_EQ(r.billing.size(), 1u);
  EXPECT_DOUBLE_EQ(r.billing[0].billed_duration_ms, 30.0);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_TRUE(r.records[1].local);
  EXPECT_EQ(r.records[0].execution_id, r.records[1].execution_id);
}

TEST(Execute, SyncRemoteIsBilledTwice) {
  const AppSpec app = App({Task("A", 10, {Sync("B")}), Task("B", 20)});
  PlatformConfig cfg = QuietConfig();
  cfg.remote_sync_overhead_ms = 50;
  cfg.handler_warm_overhead_ms = 1.3;
  Simulation split = Make(app, cfg, "(A)-(B)");
  const RequestResult r = Warm(split, "A");
  EXPECT_NEAR(r.rr_ms, 1.3 + 10 + 50 + 1.3 + 20, 1e-9);
  ASSERT_EQ(r.billing.size(), 2u);
  Simulation fused = Make(app, cfg, "(A,B)");
  const RequestResult f = Warm(fused, "A");
  double split_billed = 0;
  for (const auto& line : r.billing) split_billed += line.billed_duration_ms;
  EXPECT_GT(split_billed, f.billing[0].billed_duration_ms);
}

TEST(Execute, AsyncRemoteDoesNotBlockResponse) {
  const AppSpec app = App({Task("A", 10, {Async("B")}), Task("B", 1000)});
  PlatformConfig cfg = QuietConfig();
  cfg.remote_async_dispatch_ms = 10;
  Simulation sim = Make(app, cfg, "(A)-(B)");
  const RequestResult r = Warm(sim, "A");
  EXPECT_DOUBLE_EQ(r.rr_ms, 20.0);
  ASSERT_EQ(r.billing.size(), 2u);
  EXPECT_DOUBLE_EQ(r.billing[1].billed_duration_ms, 1000.0);
}

// The function answers once its deferred async work is done too.
TEST(Execute, AsyncLocalRunsAfterTheSyncWork) {
  const AppSpec app = App({Task("A", 10, {Async("B"), Sync("C")}), Task("B", 100), Task("C", 5)});
  Simulation sim = Make(app, QuietConfig(), "(A,B,C)");
  const RequestResult r = Warm(sim, "A");
  EXPECT_DOUBLE_EQ(r.rr_ms, 115.0);
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[2].callee, "B");
  EXPECT_DOUBLE_EQ(ToMillis(r.records[2].start - r.records[0].start), 15.0);
  ASSERT_EQ(r.billing.size(), 1u);
  EXPECT_DOUBLE_EQ(r.billing[0].billed_duration_ms, 115.0);
}

TEST(Execute, OverheadAccounting) {
  const PlatformConfig cfg;
  const AppSpec app = App({Task("A", 40)});
  Simulation sim = Make(app, cfg, "(A)");
  const RequestResult cold = sim.HandleExternalRequest("A", Micros{0});
  ASSERT_TRUE(cold.records[0].cold);
  EXPECT_NEAR(cold.records[0].wall_ms - 40.0, 36.6 + 250.0, 1e-9);
  const RequestResult warm = sim.HandleExternalRequest("A", FromMillis(5000));
  ASSERT_FALSE(warm.records[0].cold);
  EXPECT_NEAR(warm.records[0].wall_ms - 40.0, 1.3, 1e-9);
  // cold init is not billed by default
  EXPECT_DOUBLE_EQ(cold.billing[0].billed_duration_ms, 77.0);
}

TEST(Execute, ColdCascade) {
  for (int n = 1; n <= 5; ++n) {
    const AppSpec app = testing::Chain(n, 10);
    for (bool fused : {false, true}) {
      Simulation sim(app, PlatformConfig{});
      sim.ApplySetup(fused ? FusedSetup(app, 128) : SingletonSetup(app, 128));
      for (int i = 0; i < 3; ++i) {
        sim.ScheduleFlush(sim.now());
        const RequestResult r = sim.HandleExternalRequest("T0", sim.now() + FromMillis(1000));
        int colds = 0;
        for (const auto& line : r.billing) colds += line.cold ? 1 : 0;
        EXPECT_EQ(colds, fused ? 1 : n) << "n=" << n;
      }
    }
  }
}

TEST(Simulation, RejectsNonRootAndMidFlightSetupChange) {
  const AppSpec app = App({Task("A", 10, {Sync("B")}), Task("B", 20)});
  Simulation sim = Make(app, QuietConfig(), "(A,B)");
  EXPECT_THROW(sim.Submit("B", Micros{0}), ConfigError);
  sim.Submit("A", Micros{0});
  EXPECT_THROW(sim.ApplySetup(ParseSetupNotation("(A)-(B)", app)), std::logic_error);
  sim.Run();
  EXPECT_NO_THROW(sim.ApplySetup(ParseSetupNotation("(A)-(B)", app)));
}

TEST(Simulation, RequestCostCoversAllLines) {
  const AppSpec app = App({Task("A", 10, {Async("B")}), Task("B", 1000)});
  Simulation sim = Make(app, PlatformConfig{}, "(A)-(B)");
  sim.Submit("A", Micros{0});
  sim.Run();
  const TelemetryLog log = sim.TakeLog();
  ASSERT_EQ(log.requests.size(), 1u);
  double total = 0;
  for (const auto& line : log.billing) total += line.cost_usd;
  EXPECT_DOUBLE_EQ(log.requests[0].cost_usd, total);
  EXPECT_TRUE(sim.log().records.empty());
}

TEST(RecordsIo, CsvHasOneLinePerRecord) {
  const AppSpec app = App({Task("A", 10, {Sync("B")}), Task("B", 20)});
  Simulation sim = Make(app, QuietConfig(), "(A)-(B)");
  const RequestResult r = sim.HandleExternalRequest("A", Micros{0});
  std::ostringstream csv;
  WriteRecordsCsv(csv, r.records);
  const std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

}  // namespace
}  // namespace fusesim
