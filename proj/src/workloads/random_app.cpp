#include "fusesim/workloads/random_app.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace fusesim {

namespace {

// std::uniform_*_distribution differ between standard libraries; these do
// not.
class Draw {
 public:
  explicit Draw(uint64_t seed) : engine_(seed) {}

  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Between(double lo, double hi) { return lo + (hi - lo) * Unit(); }
  int IntBetween(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<uint64_t>(hi - lo + 1)); }
  bool Chance(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

RandomApp MakeRandomApp(uint64_t seed, const RandomAppOptions& o) {
  Draw draw(seed);
  const int n = draw.IntBetween(o.min_tasks, o.max_tasks);

  std::vector<TaskSpec> tasks(n);
  for (int i = 0; i < n; ++i) tasks[i].id = "T" + std::to_string(i);

  std::vector<bool> async_target(n, false);
  auto add_edge = [&](int from, int to) {
    const CallMode mode = draw.Chance(o.async_probability) ? CallMode::kAsync : CallMode::kSync;
    tasks[from].calls.push_back({tasks[to].id, mode});
    if (mode == CallMode::kAsync) async_target[to] = true;
  };
  for (int i = 1; i < n; ++i) add_edge(draw.IntBetween(0, i - 1), i);
  for (int to = 2; to < n; ++to) {
    for (int from = 0; from < to; ++from) {
      const bool linked = std::any_of(tasks[from].calls.begin(), tasks[from].calls.end(),
                                      [&](const CallEdge& e) { return e.callee == tasks[to].id; });
      if (!linked && draw.Chance(o.extra_edge_probability)) add_edge(from, to);
    }
  }

  for (int i = 0; i < n; ++i) {
    if (async_target[i]) {
      tasks[i].cpu_work = std::round(draw.Between(100.0, 400.0));
      tasks[i].parallelism = draw.IntBetween(1, 2);
    } else {
      tasks[i].cpu_work = std::round(draw.Between(5.0, 100.0));
      tasks[i].parallelism = 1;
    }
  }

  RandomApp out;
  out.app.tasks = std::move(tasks);
  out.app.roots = {"T0"};

  std::vector<int> pool = PlatformConfig{}.memory_sizes_mb;
  std::vector<int> sizes;
  for (int k = 0; k < o.extra_sizes && !pool.empty(); ++k) {
    const int pick = draw.IntBetween(0, static_cast<int>(pool.size()) - 1);
    sizes.push_back(pool[pick]);
    pool.erase(pool.begin() + pick);
  }
  std::sort(sizes.begin(), sizes.end());
  out.cfg.memory_sizes_mb = sizes;
  return out;
}

}  // namespace fusesim
