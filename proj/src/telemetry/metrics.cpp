#include "fusesim/telemetry/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fusesim/domain/text.hpp"

namespace fusesim {

double Median(std::vector<double> values) {
  if (values.empty()) throw NoDataError("median of no values");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double PercentileNearestRank(std::vector<double> values, double p) {
  if (values.empty()) throw NoDataError("percentile of no values");
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(p / 100.0 * static_cast<double>(values.size()));
  const size_t index = static_cast<size_t>(std::clamp(rank, 1.0, static_cast<double>(values.size()))) - 1;
  return values[index];
}

MetricsSnapshot Snapshot(const TelemetryLog& log, const std::string& window_id, const std::string& setup_id) {
  if (log.requests.empty()) throw NoDataError("window '" + window_id + "' has no completed requests");
  MetricsSnapshot snapshot;
  snapshot.window_id = window_id;
  snapshot.setup_id = setup_id;
  snapshot.request_count = static_cast<int64_t>(log.requests.size());

  std::vector<double> rr;
  rr.reserve(log.requests.size());
  for (const auto& request : log.requests) rr.push_back(request.rr_ms);
  snapshot.rr_med = Median(rr);
  snapshot.rr_p95 = PercentileNearestRank(rr, 95.0);

  double total_cost = 0.0;
  int64_t cold_lines = 0;
  std::map<std::string, std::vector<double>> group_durations;
  for (const auto& line : log.billing) {
    total_cost += line.cost_usd;
    if (line.cold) ++cold_lines;
    snapshot.group_cost_usd[line.deployment_id] += line.cost_usd;
    group_durations[line.deployment_id].push_back(line.billed_duration_ms);
  }
  for (auto& [group, durations] : group_durations) snapshot.group_wall_med_ms[group] = Median(std::move(durations));
  snapshot.mean_cost_pmi = total_cost / static_cast<double>(snapshot.request_count) * 1e6;
  snapshot.cold_rate =
      log.billing.empty() ? 0.0 : static_cast<double>(cold_lines) / static_cast<double>(log.billing.size());
  return snapshot;
}

namespace {

double Ratio(double prev, double cur) {
  const double delta = std::fabs(cur - prev);
  if (prev == 0.0) return delta == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return delta / std::fabs(prev);
}

}  // namespace

double RelativeChange(const MetricsSnapshot& prev, const MetricsSnapshot& cur) {
  return std::max(Ratio(prev.mean_cost_pmi, cur.mean_cost_pmi), Ratio(prev.rr_med, cur.rr_med));
}

nlohmann::json SnapshotToJson(const MetricsSnapshot& s) {
  return nlohmann::json{{"window_id", s.window_id},
                        {"setup_id", s.setup_id},
                        {"request_count", s.request_count},
                        {"rr_med", s.rr_med},
                        {"rr_p95", s.rr_p95},
                        {"mean_cost_pmi", s.mean_cost_pmi},
                        {"cold_rate", s.cold_rate},
                        {"group_cost_usd", s.group_cost_usd},
                        {"group_wall_med_ms", s.group_wall_med_ms}};
}

void WriteSnapshotCsvHeader(std::ostream& out) {
  out << "setup_id,window_id,requests,rr_med_ms,rr_p95_ms,mean_cost_pmi,cold_rate\n";
}

void WriteSnapshotCsvRow(std::ostream& out, const MetricsSnapshot& s) {
  out << s.setup_id << ',' << s.window_id << ',' << s.request_count << ',' << FormatMillis(s.rr_med) << ','
      << FormatMillis(s.rr_p95) << ',' << FormatFixed(s.mean_cost_pmi, 4) << ',' << FormatFixed(s.cold_rate, 4)
      << '\n';
}

}  // namespace fusesim
