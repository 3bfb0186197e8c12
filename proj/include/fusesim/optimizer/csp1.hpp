#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace fusesim {

struct Csp1Params {
  int64_t base_interval = 1000;
  double delta_floor = 0.01;
  int64_t min_interval = 500;
  int64_t max_interval = 50000;
  int clearance = 5;  // consecutive small-change runs before sampling
  double sampling_fraction = 0.1;  // chance of a run per max_interval window
  double threshold = 0.05;
};

enum class Cadence { kFixed, kCsp1 };

std::string_view ToString(Cadence cadence);
Cadence ParseCadence(std::string_view text);

// Decides how many requests to wait before the next optimizer run.
// Continuous mode: base / max(delta, floor), clamped. After `clearance`
// consecutive deltas below the threshold it samples instead: each
// max_interval window triggers a run with probability f. Any large delta
// returns to continuous mode. kFixed always answers base_interval.
class Csp1Scheduler {
 public:
  Csp1Scheduler(Cadence cadence, Csp1Params params, uint64_t seed);

  int64_t Next(double delta);

  bool sampling() const { return sampling_; }
  int small_run_count() const { return small_runs_; }
  Cadence cadence() const { return cadence_; }
  const Csp1Params& params() const { return params_; }

  void Reset();

 private:
  Cadence cadence_;
  Csp1Params params_;
  uint64_t seed_;
  std::mt19937_64 rng_;
  int small_runs_ = 0;
  bool sampling_ = false;
};

}  // namespace fusesim
