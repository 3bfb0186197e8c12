#pragma once

#include <ostream>
#include <vector>

#include <json.hpp>

#include "fusesim/platform/cost_model.hpp"
#include "fusesim/runtime/simulation.hpp"

namespace fusesim {

// Field names match InvocationRecord; times are milliseconds of sim-time.
nlohmann::json RecordToJson(const InvocationRecord& record);

// One JSON object per line.
void WriteRecordsNdjson(std::ostream& out, const std::vector<InvocationRecord>& records);

// Columns: trace_id,caller,callee,mode,local,group_id,memory_mb,cold,start_ms,end_ms,wall_ms,billing_line
void WriteRecordsCsv(std::ostream& out, const std::vector<InvocationRecord>& records);

// Columns: line,deployment_id,trace_id,billed_duration_ms,memory_gb,cost_usd,cold
void WriteBillingCsv(std::ostream& out, const std::vector<BillingLine>& lines);

}  // namespace fusesim
