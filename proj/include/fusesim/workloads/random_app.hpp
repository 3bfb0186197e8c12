#pragma once

#include <cstdint>
#include <vector>

#include "fusesim/domain/types.hpp"

namespace fusesim {

struct RandomAppOptions {
  int min_tasks = 2;
  int max_tasks = 5;
  double extra_edge_probability = 0.2;  // per forward pair beyond the spanning tree
  double async_probability = 0.5;
  int extra_sizes = 2;  // drawn from the default size list, on top of 128
};

struct RandomApp {
  AppSpec app;
  PlatformConfig cfg;  // memory_sizes_mb restricted to the drawn sizes
};

// Small acyclic app with a single root "T0". Tasks reached asynchronously
// are compute-heavy; the rest are light. Deterministic per seed on every
// platform.
RandomApp MakeRandomApp(uint64_t seed, const RandomAppOptions& options = {});

}  // namespace fusesim
