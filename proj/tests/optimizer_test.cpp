#include <gtest/gtest.h>

#include "fusesim/domain/notation.hpp"
#include "fusesim/domain/validation.hpp"
#include "fusesim/optimizer/campaign.hpp"
#include "fusesim/optimizer/csp1.hpp"
#include "fusesim/optimizer/infra_optimizer.hpp"
#include "fusesim/optimizer/objective.hpp"
#include "fusesim/optimizer/oracle.hpp"
#include "fusesim/optimizer/path_optimizer.hpp"
#include "fusesim/workloads/apps.hpp"
#include "fusesim/workloads/random_app.hpp"
#include "fusesim/workloads/schedule.hpp"
#include "test_util.hpp"

namespace fusesim {
namespace {

using testing::App;
using testing::Async;
using testing::Sync;
using testing::Task;

MetricsSnapshot Snap(double cost_pmi, double rr) {
  MetricsSnapshot s;
  s.mean_cost_pmi = cost_pmi;
  s.rr_med = rr;
  s.request_count = 1;
  return s;
}

AnnotatedCallGraph Observe(const AppSpec& app, const FusionSetup& setup, int requests = 30) {
  Simulation sim(app, PlatformConfig{});
  sim.ApplySetup(setup);
  ScheduleOptions options;
  options.opt_requests = requests;
  return BuildCallGraph(Replay(sim, MakeSchedule(Protocol::kOpt, app, 1, options), Micros{0}).records);
}

// Follows path moves on a fixed observation until none is left.
FusionSetup PathFixpoint(const AppSpec& app, const AnnotatedCallGraph& graph, std::vector<std::string>* steps) {
  FusionSetup current = SingletonSetup(app, 128);
  for (int guard = 0; guard < 100; ++guard) {
    auto next = NextPathStep(graph, current);
    if (!next) return current;
    current = next->setup;
    if (steps) steps->push_back(FormatSetup(current));
  }
  ADD_FAILURE() << "path moves did not terminate";
  return current;
}

// True when some member of `group` calls `callee` synchronously, which makes
// `callee` a member as well.
bool ForcedMember(const AnnotatedCallGraph& graph, const FusionGroup& group, const std::string& callee) {
  for (const auto& m : group.members) {
    if (graph.HasEdge(m, callee, CallMode::kSync)) return true;
  }
  return false;
}

// Only-sync edges stay inside the caller's home group; only-async edges
// leave it, unless a synchronous call from the same group forces the callee
// in.
void ExpectPathShape(const AnnotatedCallGraph& graph, const FusionSetup& setup) {
  for (const auto& [key, stats] : graph.edges) {
    if (key.caller == kExternalCaller) continue;
    const bool sync = graph.HasEdge(key.caller, key.callee, CallMode::kSync);
    const bool async = graph.HasEdge(key.caller, key.callee, CallMode::kAsync);
    const FusionGroup* home = setup.HomeGroup(key.caller);
    ASSERT_NE(home, nullptr);
    const std::string where = key.caller + "->" + key.callee + " in " + FormatSetup(setup);
    if (sync && !async) {
      EXPECT_TRUE(home->Contains(key.callee)) << where;
    }
    if (async && !sync && !ForcedMember(graph, *home, key.callee)) {
      EXPECT_FALSE(home->Contains(key.callee)) << where;
    }
  }
}

TEST(PathStep, TreeFirstMoveFusesAE) {
  const AppSpec tree = MakeTreeApp();
  const auto graph = Observe(tree, SingletonSetup(tree, 128));
  const auto step = NextPathStep(graph, SingletonSetup(tree, 128));
  ASSERT_TRUE(step);
  EXPECT_EQ(FormatSetup(step->setup), "(A,E)-(B)-(C)-(D)-(F)-(G)");
  EXPECT_EQ(step->move.ToString(), "add(E,A)");
}

TEST(PathStep, TreeReachesTargetInThreeSteps) {
  const AppSpec tree = MakeTreeApp();
  std::vector<std::string> steps;
  const FusionSetup fix = PathFixpoint(tree, Observe(tree, SingletonSetup(tree, 128)), &steps);
  EXPECT_EQ(steps,
            (std::vector<std::string>{"(A,E)-(B)-(C)-(D)-(F)-(G)", "(A,D,E)-(B)-(C)-(F)-(G)", "(A,B,D,E)-(C)-(F)-(G)"}));
  EXPECT_EQ(FormatSetup(fix), "(A,B,D,E)-(C)-(F)-(G)");
}

TEST(PathStep, SingleTaskIsDone) {
  const AppSpec app = App({Task("A", 10)});
  EXPECT_FALSE(NextPathStep(Observe(app, SingletonSetup(app, 128)), SingletonSetup(app, 128)));
}

TEST(PathStep, SplitsAsyncCalleeOutOfFusedGroup) {
  const AppSpec app = App({Task("A", 10, {Sync("B"), Async("C")}), Task("B", 10), Task("C", 10)});
  const FusionSetup fused = FusedSetup(app, 128);
  const auto graph = Observe(app, fused);
  FusionSetup current = fused;
  while (auto next = NextPathStep(graph, current)) current = next->setup;
  EXPECT_EQ(FormatSetup(current), "(A,B)-(C)");
}

TEST(PathStep, ExcludedMovesAreSkipped) {
  const AppSpec tree = MakeTreeApp();
  const auto graph = Observe(tree, SingletonSetup(tree, 128));
  const auto first = NextPathStep(graph, SingletonSetup(tree, 128));
  ASSERT_TRUE(first);
  const auto second = NextPathStep(graph, SingletonSetup(tree, 128), {first->move});
  ASSERT_TRUE(second);
  EXPECT_NE(second->move, first->move);
}

// Fixpoint property on generated acyclic apps.
TEST(PathStep, FixpointShapeOnRandomApps) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const RandomApp r = MakeRandomApp(seed);
    const auto graph = Observe(r.app, SingletonSetup(r.app, 128), 10);
    const FusionSetup fix = PathFixpoint(r.app, graph, nullptr);
    EXPECT_TRUE(ValidateSetup(fix, r.app).empty());
    ExpectPathShape(graph, fix);
  }
}

TEST(Objective, AcceptOrRevert) {
  const Objective obj;
  const MetricsSnapshot base = Snap(57.04, 237);
  EXPECT_EQ(AcceptOrRevert(Snap(48.26, 237), base, obj, base), Decision::kAccept);
  EXPECT_EQ(AcceptOrRevert(base, base, obj, base), Decision::kRevert);
  EXPECT_EQ(AcceptOrRevert(Snap(57.04, 171), base, obj, base), Decision::kAccept);
  EXPECT_EQ(AcceptOrRevert(Snap(57.2, 100), base, obj, base), Decision::kAccept);  // within 1% on cost
  EXPECT_EQ(AcceptOrRevert(Snap(60, 100), base, obj, base), Decision::kRevert);
}

TEST(Objective, Weighted) {
  Objective obj{ObjectiveMode::kWeighted, 0.5, 0.01};
  const MetricsSnapshot base = Snap(100, 100);
  EXPECT_DOUBLE_EQ(ObjectiveValue(base, obj, base), 1.0);
  EXPECT_DOUBLE_EQ(ObjectiveValue(Snap(50, 150), obj, base), 1.0);
  EXPECT_EQ(Compare(Snap(80, 100), base, obj, base), Comparison::kBetter);
  obj.alpha = 2;
  EXPECT_THROW(ValidateObjective(obj), ConfigError);
  EXPECT_EQ(ObjectiveFromJson("weighted").mode, ObjectiveMode::kWeighted);
  EXPECT_EQ(ObjectiveFromJson(ObjectiveToJson(Objective{})), Objective{});
  EXPECT_THROW(ObjectiveFromJson("fastest"), ConfigError);
}

TEST(Infra, PlanArithmetic) {
  const AppSpec tree = MakeTreeApp();
  const PlatformConfig cfg;
  const InfraPlan tree_plan = InfraSweepPlan(ParseSetupNotation("(A,B,D,E)-(C)-(F)-(G)", tree), cfg);
  EXPECT_EQ(tree_plan.windows.size(), 8u);
  EXPECT_EQ(tree_plan.TrialCount(), 32u);

  PlatformConfig tiny;
  tiny.memory_sizes_mb = {128};
  const AppSpec one = App({Task("A", 1)});
  EXPECT_TRUE(InfraSweepPlan(SingletonSetup(one, 128), tiny).empty());

  const AppSpec two = App({Task("A", 1, {Async("B")}), Task("B", 1)});
  const InfraPlan two_plan = InfraSweepPlan(SingletonSetup(two, 128), cfg);
  EXPECT_EQ(two_plan.windows.size(), 8u);
  EXPECT_EQ(two_plan.TrialCount(), 16u);
  for (const auto& w : two_plan.windows) EXPECT_EQ(w.size(), 2u);
}

TEST(Infra, SelectsCheapestThenFastestThenSmallest) {
  const AppSpec two = App({Task("A", 1, {Async("B")}), Task("B", 1)});
  const FusionSetup path = SingletonSetup(two, 128);
  PlatformConfig cfg;
  cfg.memory_sizes_mb = {1024, 2048};
  GroupTrials trials;
  trials["g0"] = {{128, {10e-6, 100}}, {1024, {12e-6, 20}}, {2048, {20e-6, 10}}};
  trials["g1"] = {{128, {10e-6, 100}}, {1024, {10.05e-6, 50}}, {2048, {10.05e-6, 50}}};
  const InfraSelection sel = InfraSelect(path, trials, cfg, Objective{});
  ASSERT_TRUE(sel.setup);
  EXPECT_EQ(FormatSetupWithMemory(*sel.setup), "(A)@128-(B)@1024");

  trials["g1"].erase(2048);
  const InfraSelection missing = InfraSelect(path, trials, cfg, Objective{});
  EXPECT_FALSE(missing.setup);
  ASSERT_EQ(missing.missing.size(), 1u);
  EXPECT_EQ(missing.missing[0], (std::pair<std::string, int>{"g1", 2048}));
}

TEST(Csp1, ContinuousInterval) {
  Csp1Scheduler s(Cadence::kCsp1, Csp1Params{}, 1);
  EXPECT_EQ(s.Next(1.0), 1000);
  EXPECT_EQ(s.Next(0.5), 2000);
  EXPECT_EQ(s.Next(0.0), 50000);
  EXPECT_EQ(s.Next(10.0), 500);
}

TEST(Csp1, ClearanceEngagesSampling) {
  Csp1Scheduler s(Cadence::kCsp1, Csp1Params{}, 1);
  for (int i = 0; i < 4; ++i) {
    s.Next(0.0);
    EXPECT_FALSE(s.sampling());
  }
  const int64_t interval = s.Next(0.0);
  EXPECT_TRUE(s.sampling());
  EXPECT_EQ(interval % 50000, 0);
  EXPECT_GE(interval, 50000);
  s.Next(0.05);
  EXPECT_FALSE(s.sampling());
  EXPECT_EQ(s.small_run_count(), 0);
}

TEST(Csp1, SmallChangeStreakIsBrokenByLargeChange) {
  Csp1Scheduler s(Cadence::kCsp1, Csp1Params{}, 1);
  for (int i = 0; i < 4; ++i) s.Next(0.01);
  s.Next(0.2);
  for (int i = 0; i < 4; ++i) s.Next(0.0);
  EXPECT_FALSE(s.sampling());
}

TEST(Csp1, FixedCadence) {
  Csp1Scheduler s(Cadence::kFixed, Csp1Params{}, 1);
  for (double d : {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.7, 100.0}) EXPECT_EQ(s.Next(d), 1000);
  EXPECT_FALSE(s.sampling());
  EXPECT_EQ(ParseCadence("fixed-1000"), Cadence::kFixed);
  EXPECT_THROW(ParseCadence("weekly"), ConfigError);
  Csp1Params bad;
  bad.sampling_fraction = 0;
  EXPECT_THROW(Csp1Scheduler(Cadence::kCsp1, bad, 1), ConfigError);
}

TEST(Oracle, SetPartitionsAreBellNumbers) {
  const size_t bell[] = {0, 1, 2, 5, 15, 52, 203};
  for (size_t n = 1; n <= 6; ++n) EXPECT_EQ(SetPartitions(n).size(), bell[n]);
}

TEST(Oracle, ZeroOverheadChainTies) {
  PlatformConfig cfg = testing::QuietConfig();
  cfg.memory_sizes_mb = {128};
  const AppSpec app = App({Task("A", 0, {Sync("B")}), Task("B", 0)});
  ScheduleOptions options;
  options.opt_requests = 20;
  const auto schedule = MakeSchedule(Protocol::kOpt, app, 1, options);
  const auto fused = EvaluateSetup(app, cfg, FusedSetup(app, 128), schedule);
  const auto split = EvaluateSetup(app, cfg, SingletonSetup(app, 128), schedule);
  EXPECT_DOUBLE_EQ(fused.mean_cost_pmi, split.mean_cost_pmi);
  EXPECT_DOUBLE_EQ(fused.rr_med, split.rr_med);
}

TEST(Oracle, OverheadFavoursFusingAChain) {
  PlatformConfig cfg;
  cfg.memory_sizes_mb = {128};
  const AppSpec app = App({Task("A", 2, {Sync("B")}), Task("B", 2)});
  ScheduleOptions options;
  options.opt_requests = 50;
  const OracleResult r = BruteForceOptimal(app, MakeSchedule(Protocol::kOpt, app, 1, options), cfg, Objective{});
  EXPECT_EQ(FormatSetup(r.setup), "(A,B)");
  EXPECT_EQ(r.evaluated, 2u);
}

TEST(Oracle, AsyncHeavyTaskIsSplitOff) {
  PlatformConfig cfg;
  cfg.memory_sizes_mb = {1024, 2048};
  const AppSpec app = App({Task("A", 10, {Sync("B"), Async("C")}), Task("B", 20), Task("C", 300, {}, 2)});
  ScheduleOptions options;
  options.opt_requests = 100;
  const Objective weighted{ObjectiveMode::kWeighted, 0.5, 0.01};
  const OracleResult r = BruteForceOptimal(app, MakeSchedule(Protocol::kOpt, app, 1, options), cfg, weighted);
  EXPECT_EQ(FormatSetup(r.setup), "(A,B)-(C)");
  EXPECT_EQ(r.evaluated, 57u);
}

TEST(Oracle, RefusesLargeInputs) {
  PlatformConfig cfg;
  const AppSpec tree = MakeTreeApp();
  EXPECT_THROW(BruteForceOptimal(tree, MakeSchedule(Protocol::kOpt, tree, 1), cfg, Objective{}), OracleLimitError);
  const AppSpec small = App({Task("A", 1)});
  EXPECT_THROW(BruteForceOptimal(small, MakeSchedule(Protocol::kOpt, small, 1), cfg, Objective{}), OracleLimitError);
}

class CampaignTest : public ::testing::Test {
 protected:
  static CampaignResult Run(const AppSpec& app) {
    CampaignOptions options;
    options.keep_logs = false;
    return RunCampaign(app, PlatformConfig{}, options);
  }
};

TEST_F(CampaignTest, TreeSequence) {
  const CampaignResult r = Run(MakeTreeApp());
  EXPECT_EQ(r.PathSequence(), (std::vector<std::string>{"(A)-(B)-(C)-(D)-(E)-(F)-(G)", "(A,E)-(B)-(C)-(D)-(F)-(G)",
                                                        "(A,D,E)-(B)-(C)-(F)-(G)", "(A,B,D,E)-(C)-(F)-(G)"}));
  ASSERT_EQ(r.entries.size(), 13u);
  for (size_t i = 0; i < r.entries.size(); ++i) {
    EXPECT_EQ(r.entries[i].setup_id, i == 0 ? "S-base" : "S-" + std::to_string(i));
  }
  EXPECT_EQ(r.path_setup_id, "S-3");
  EXPECT_EQ(FormatSetup(r.final_setup), "(A,B,D,E)-(C)-(F)-(G)");
  EXPECT_EQ(r.state.phase, Phase::kStable);
}

TEST_F(CampaignTest, AcceptedValuesNeverIncrease) {
  for (const AppSpec& app : {MakeTreeApp(), MakeIotApp(), MakeWebApp()}) {
    const CampaignResult r = Run(app);
    double incumbent = r.entries.front().snapshot.mean_cost_pmi;
    for (const auto& e : r.entries) {
      if (e.decision != "accept" && e.decision != "adopt") continue;
      EXPECT_LE(e.snapshot.mean_cost_pmi, incumbent * 1.01) << e.setup_id;
      incumbent = std::min(incumbent, e.snapshot.mean_cost_pmi);
    }
  }
}

TEST_F(CampaignTest, PathSetupHasTargetShape) {
  for (const AppSpec& app : {MakeTreeApp(), MakeIotApp(), MakeWebApp()}) {
    const CampaignResult r = Run(app);
    ExpectPathShape(Observe(app, SingletonSetup(app, 128)), r.path_setup);
  }
}

TEST_F(CampaignTest, Deterministic) {
  const AppSpec iot = MakeIotApp();
  EXPECT_EQ(CampaignToJson(Run(iot), iot).dump(), CampaignToJson(Run(iot), iot).dump());
}

TEST_F(CampaignTest, JsonRoundTrip) {
  const AppSpec tree = MakeTreeApp();
  const CampaignResult r = Run(tree);
  const PriorCampaign prior = PriorCampaignFromJson(CampaignToJson(r, tree), tree);
  EXPECT_EQ(prior.path_setup, r.path_setup);
  EXPECT_EQ(prior.final_setup, r.final_setup);
}

TEST_F(CampaignTest, Csp1CadenceTerminates) {
  CampaignOptions options;
  options.keep_logs = false;
  options.cadence = Cadence::kCsp1;
  const CampaignResult r = RunCampaign(MakeTreeApp(), PlatformConfig{}, options);
  EXPECT_EQ(r.state.phase, Phase::kStable);
  EXPECT_EQ(FormatSetup(r.path_setup), "(A,B,D,E)-(C)-(F)-(G)");
}

TEST(OptimizerState, PhasesMoveForward) {
  OptimizerState s;
  s.Advance(Phase::kInfra);
  EXPECT_THROW(s.Advance(Phase::kPath), std::logic_error);
  s.Advance(Phase::kStable);
  s.Reset();
  EXPECT_EQ(s.phase, Phase::kPath);
  EXPECT_TRUE(s.tried.empty());
}

}  // namespace
}  // namespace fusesim
