#pragma once

#include <string>

#include <json.hpp>

#include "fusesim/telemetry/metrics.hpp"

namespace fusesim {

enum class ObjectiveMode { kMinCostTiebreakRr, kWeighted };

struct Objective {
  ObjectiveMode mode = ObjectiveMode::kMinCostTiebreakRr;
  double alpha = 0.5;  // cost weight in kWeighted
  double epsilon = 0.01;  // relative tolerance for "improved"

  bool operator==(const Objective&) const = default;
};

enum class Comparison { kBetter, kEquivalent, kWorse };
enum class Decision { kAccept, kRevert };

std::string_view ToString(ObjectiveMode mode);
std::string_view ToString(Comparison comparison);
std::string_view ToString(Decision decision);

// Throws ConfigError unless 0 <= alpha <= 1 and epsilon >= 0.
void ValidateObjective(const Objective& objective);

// Scalar value to minimize. kMinCostTiebreakRr: mean cost in $pmi.
// kWeighted: alpha * cost / base cost + (1 - alpha) * rr_med / base rr_med.
double ObjectiveValue(const MetricsSnapshot& s, const Objective& objective, const MetricsSnapshot& baseline);

// kMinCostTiebreakRr: cost lower by more than epsilon (relative) wins; costs
// within epsilon fall through to rr_med with the same tolerance.
// kWeighted: weighted values compared with the relative tolerance.
Comparison Compare(const MetricsSnapshot& candidate, const MetricsSnapshot& incumbent, const Objective& objective,
                   const MetricsSnapshot& baseline);

// Accept only a strict improvement.
Decision AcceptOrRevert(const MetricsSnapshot& candidate, const MetricsSnapshot& incumbent,
                        const Objective& objective, const MetricsSnapshot& baseline);

// "min_cost" | "weighted" strings, or {"mode": ..., "alpha": ..., "epsilon": ...}.
Objective ObjectiveFromJson(const nlohmann::json& j);
nlohmann::json ObjectiveToJson(const Objective& objective);

}  // namespace fusesim
