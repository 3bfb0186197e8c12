#include "fusesim/optimizer/objective.hpp"

#include <cmath>

namespace fusesim {

std::string_view ToString(ObjectiveMode mode) {
  return mode == ObjectiveMode::kWeighted ? "weighted" : "min_cost";
}

std::string_view ToString(Comparison comparison) {
  switch (comparison) {
    case Comparison::kBetter:
      return "better";
    case Comparison::kEquivalent:
      return "equivalent";
    case Comparison::kWorse:
      return "worse";
  }
  return "equivalent";
}

std::string_view ToString(Decision decision) { return decision == Decision::kAccept ? "accept" : "revert"; }

void ValidateObjective(const Objective& objective) {
  if (!(objective.alpha >= 0.0 && objective.alpha <= 1.0)) throw ConfigError("objective alpha must be in [0, 1]");
  if (!(objective.epsilon >= 0.0)) throw ConfigError("objective epsilon must be non-negative");
}

namespace {

double Normalized(double value, double base) { return base > 0.0 ? value / base : value; }

// Relative difference of `candidate` against `incumbent`; negative is better.
double RelativeDelta(double candidate, double incumbent) {
  if (incumbent == 0.0) {
    if (candidate == 0.0) return 0.0;
    return candidate > 0.0 ? INFINITY : -INFINITY;
  }
  return (candidate - incumbent) / std::fabs(incumbent);
}

Comparison Classify(double delta, double epsilon) {
  if (delta < -epsilon) return Comparison::kBetter;
  if (delta > epsilon) return Comparison::kWorse;
  return Comparison::kEquivalent;
}

}  // namespace

double ObjectiveValue(const MetricsSnapshot& s, const Objective& objective, const MetricsSnapshot& baseline) {
  if (objective.mode == ObjectiveMode::kMinCostTiebreakRr) return s.mean_cost_pmi;
  return objective.alpha * Normalized(s.mean_cost_pmi, baseline.mean_cost_pmi) +
         (1.0 - objective.alpha) * Normalized(s.rr_med, baseline.rr_med);
}

Comparison Compare(const MetricsSnapshot& candidate, const MetricsSnapshot& incumbent, const Objective& objective,
                   const MetricsSnapshot& baseline) {
  if (objective.mode == ObjectiveMode::kWeighted) {
    return Classify(RelativeDelta(ObjectiveValue(candidate, objective, baseline),
                                  ObjectiveValue(incumbent, objective, baseline)),
                    objective.epsilon);
  }
  const Comparison by_cost =
      Classify(RelativeDelta(candidate.mean_cost_pmi, incumbent.mean_cost_pmi), objective.epsilon);
  if (by_cost != Comparison::kEquivalent) return by_cost;
  return Classify(RelativeDelta(candidate.rr_med, incumbent.rr_med), objective.epsilon);
}

Decision AcceptOrRevert(const MetricsSnapshot& candidate, const MetricsSnapshot& incumbent,
                        const Objective& objective, const MetricsSnapshot& baseline) {
  return Compare(candidate, incumbent, objective, baseline) == Comparison::kBetter ? Decision::kAccept
                                                                                  : Decision::kRevert;
}

Objective ObjectiveFromJson(const nlohmann::json& j) {
  Objective objective;
  auto parse_mode = [](const std::string& text) {
    if (text == "min_cost" || text == "MIN_COST_TIEBREAK_RR") return ObjectiveMode::kMinCostTiebreakRr;
    if (text == "weighted" || text == "WEIGHTED") return ObjectiveMode::kWeighted;
    throw ConfigError("unknown objective mode '" + text + "'");
  };
  try {
    if (j.is_string()) {
      objective.mode = parse_mode(j.get<std::string>());
    } else if (j.is_object()) {
      for (const auto& [key, value] : j.items()) {
        if (key != "mode" && key != "alpha" && key != "epsilon") {
          throw ConfigError("objective: unknown field '" + key + "'");
        }
      }
      if (j.contains("mode")) objective.mode = parse_mode(j.at("mode").get<std::string>());
      if (j.contains("alpha")) objective.alpha = j.at("alpha").get<double>();
      if (j.contains("epsilon")) objective.epsilon = j.at("epsilon").get<double>();
    } else {
      throw ConfigError("objective must be a string or an object");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("objective: ") + e.what());
  }
  ValidateObjective(objective);
  return objective;
}

nlohmann::json ObjectiveToJson(const Objective& objective) {
  return {{"mode", std::string(ToString(objective.mode))},
          {"alpha", objective.alpha},
          {"epsilon", objective.epsilon}};
}

}  // namespace fusesim
