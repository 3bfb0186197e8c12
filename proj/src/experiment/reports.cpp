#include "fusesim/experiment/reports.hpp"

#include "fusesim/domain/notation.hpp"
#include "fusesim/domain/text.hpp"
#include "fusesim/runtime/records_io.hpp"

namespace fusesim {

std::string CsvField(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SetupRun>& runs) {
  out << "setup_id,label,notation,requests,rr_med_ms,rr_p95_ms,mean_cost_pmi,cold_rate\n";
  for (const auto& run : runs) {
    const MetricsSnapshot& s = run.snapshot;
    out << CsvField(run.setup_id) << ',' << CsvField(run.label) << ','
        << CsvField(FormatSetupWithMemory(run.setup)) << ',' << s.request_count << ','
        << FormatMillis(s.rr_med) << ',' << FormatMillis(s.rr_p95) << ',' << FormatFixed(s.mean_cost_pmi, 4) << ','
        << FormatFixed(s.cold_rate, 4) << '\n';
  }
}

void WriteRequestsCsv(std::ostream& out, const std::vector<SetupRun>& runs) {
  out << "trace_id,setup_id,root,arrival_ms,rr_ms,cost_usd\n";
  for (const auto& run : runs) {
    for (const auto& r : run.log.requests) {
      out << r.trace_id << ',' << CsvField(run.setup_id) << ',' << r.root << ',' << FormatMillis(ToMillis(r.arrival))
          << ',' << FormatMillis(r.rr_ms) << ',' << FormatUsd(r.cost_usd) << '\n';
    }
  }
}

void WriteRunRecordsNdjson(std::ostream& out, const std::vector<SetupRun>& runs) {
  for (const auto& run : runs) {
    for (const auto& record : run.log.records) {
      nlohmann::json line = RecordToJson(record);
      line["setup_id"] = run.setup_id;
      out << line.dump() << '\n';
    }
  }
}

void WriteRunBillingCsv(std::ostream& out, const std::vector<SetupRun>& runs) {
  out << "setup_id,line,deployment_id,trace_id,billed_duration_ms,memory_gb,cost_usd,cold\n";
  for (const auto& run : runs) {
    for (size_t i = 0; i < run.log.billing.size(); ++i) {
      const BillingLine& l = run.log.billing[i];
      out << CsvField(run.setup_id) << ',' << i << ',' << l.deployment_id << ',' << l.trace_id << ','
          << FormatMillis(l.billed_duration_ms) << ',' << FormatFixed(l.memory_gb, 6) << ',' << FormatUsd(l.cost_usd)
          << ',' << (l.cold ? 1 : 0) << '\n';
    }
  }
}

}  // namespace fusesim
