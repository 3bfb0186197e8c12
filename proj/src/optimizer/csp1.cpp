#include "fusesim/optimizer/csp1.hpp"

#include <algorithm>
#include <cmath>

#include "fusesim/domain/types.hpp"

namespace fusesim {

std::string_view ToString(Cadence cadence) { return cadence == Cadence::kCsp1 ? "csp1" : "fixed"; }

Cadence ParseCadence(std::string_view text) {
  if (text == "fixed" || text == "fixed-1000") return Cadence::kFixed;
  if (text == "csp1") return Cadence::kCsp1;
  throw ConfigError("unknown cadence '" + std::string(text) + "' (expected fixed or csp1)");
}

Csp1Scheduler::Csp1Scheduler(Cadence cadence, Csp1Params params, uint64_t seed)
    : cadence_(cadence), params_(params), seed_(seed), rng_(seed) {
  if (!(params_.sampling_fraction > 0.0 && params_.sampling_fraction <= 1.0)) {
    throw ConfigError("CSP-1 sampling fraction must be in (0, 1]");
  }
  if (params_.min_interval <= 0 || params_.min_interval > params_.max_interval) {
    throw ConfigError("CSP-1 intervals must satisfy 0 < min <= max");
  }
}

void Csp1Scheduler::Reset() {
  rng_.seed(seed_);
  small_runs_ = 0;
  sampling_ = false;
}

int64_t Csp1Scheduler::Next(double delta) {
  if (cadence_ == Cadence::kFixed) return params_.base_interval;

  if (delta < params_.threshold) {
    ++small_runs_;
    if (small_runs_ >= params_.clearance) sampling_ = true;
  } else {
    small_runs_ = 0;
    sampling_ = false;
  }

  if (sampling_) {
    int64_t windows = 1;
    while (static_cast<double>(rng_() >> 11) * 0x1.0p-53 >= params_.sampling_fraction) ++windows;
    return windows * params_.max_interval;
  }
  const double scaled = static_cast<double>(params_.base_interval) / std::max(delta, params_.delta_floor);
  const double clamped =
      std::clamp(scaled, static_cast<double>(params_.min_interval), static_cast<double>(params_.max_interval));
  return static_cast<int64_t>(std::llround(clamped));
}

}  // namespace fusesim
