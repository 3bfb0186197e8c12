#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusesim/runtime/simulation.hpp"

namespace fusesim {

// A window without any completed external request.
class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricsSnapshot {
  std::string window_id;
  std::string setup_id;
  int64_t request_count = 0;
  double rr_med = 0.0;  // ms
  double rr_p95 = 0.0;  // ms, nearest rank
  double mean_cost_pmi = 0.0;  // USD per million requests
  double cold_rate = 0.0;  // cold billing lines / billing lines
  std::map<std::string, double> group_cost_usd;  // window totals by group id
  std::map<std::string, double> group_wall_med_ms;  // median billed execution per group

  bool operator==(const MetricsSnapshot&) const = default;
};

// Median of the values; even counts average the two middle elements.
double Median(std::vector<double> values);
// Nearest-rank percentile, p in (0, 100].
double PercentileNearestRank(std::vector<double> values, double p);

MetricsSnapshot Snapshot(const TelemetryLog& log, const std::string& window_id, const std::string& setup_id = "");

// max(|Δcost| / prev.cost, |Δrr_med| / prev.rr_med). A zero denominator
// yields 0 when the value did not change and +infinity otherwise.
double RelativeChange(const MetricsSnapshot& prev, const MetricsSnapshot& cur);

nlohmann::json SnapshotToJson(const MetricsSnapshot& snapshot);

// Columns: setup_id,window_id,requests,rr_med_ms,rr_p95_ms,mean_cost_pmi,cold_rate
void WriteSnapshotCsvHeader(std::ostream& out);
void WriteSnapshotCsvRow(std::ostream& out, const MetricsSnapshot& snapshot);

}  // namespace fusesim
