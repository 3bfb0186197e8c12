#include "fusesim/runtime/records_io.hpp"

#include "fusesim/domain/text.hpp"

namespace fusesim {

nlohmann::json RecordToJson(const InvocationRecord& record) {
  return nlohmann::json{{"trace_id", record.trace_id},
                        {"caller", record.caller},
                        {"callee", record.callee},
                        {"mode", std::string(ToString(record.mode))},
                        {"local", record.local},
                        {"group_id", record.group_id},
                        {"memory_mb", record.memory_mb},
                        {"cold", record.cold},
                        {"start_ms", ToMillis(record.start)},
                        {"end_ms", ToMillis(record.end)},
                        {"wall_ms", record.wall_ms},
                        {"billing_line", record.billing_line}};
}

void WriteRecordsNdjson(std::ostream& out, const std::vector<InvocationRecord>& records) {
  for (const auto& record : records) out << RecordToJson(record).dump() << '\n';
}

void WriteRecordsCsv(std::ostream& out, const std::vector<InvocationRecord>& records) {
  out << "trace_id,caller,callee,mode,local,group_id,memory_mb,cold,start_ms,end_ms,wall_ms,billing_line\n";
  for (const auto& r : records) {
    out << r.trace_id << ',' << r.caller << ',' << r.callee << ',' << ToString(r.mode) << ',' << (r.local ? 1 : 0)
        << ',' << r.group_id << ',' << r.memory_mb << ',' << (r.cold ? 1 : 0) << ',' << FormatMillis(ToMillis(r.start))
        << ',' << FormatMillis(ToMillis(r.end)) << ',' << FormatMillis(r.wall_ms) << ',' << r.billing_line << '\n';
  }
}

void WriteBillingCsv(std::ostream& out, const std::vector<BillingLine>& lines) {
  out << "line,deployment_id,trace_id,billed_duration_ms,memory_gb,cost_usd,cold\n";
  for (size_t i = 0; i < lines.size(); ++i) {
    const BillingLine& l = lines[i];
    out << i << ',' << l.deployment_id << ',' << l.trace_id << ',' << FormatMillis(l.billed_duration_ms) << ','
        << FormatFixed(l.memory_gb, 6) << ',' << FormatUsd(l.cost_usd) << ',' << (l.cold ? 1 : 0) << '\n';
  }
}

}  // namespace fusesim
