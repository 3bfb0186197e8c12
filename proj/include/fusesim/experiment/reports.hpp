#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fusesim/experiment/experiment.hpp"

namespace fusesim {

// Quotes a CSV field when it contains a comma, quote or newline.
std::string CsvField(const std::string& value);

// Columns: setup_id,label,notation,requests,rr_med_ms,rr_p95_ms,mean_cost_pmi,cold_rate
void WriteSummaryCsv(std::ostream& out, const std::vector<SetupRun>& runs);

// Columns: trace_id,setup_id,root,arrival_ms,rr_ms,cost_usd
void WriteRequestsCsv(std::ostream& out, const std::vector<SetupRun>& runs);

// Records of every run, each line tagged with its setup_id.
void WriteRunRecordsNdjson(std::ostream& out, const std::vector<SetupRun>& runs);

// Columns: setup_id,line,deployment_id,trace_id,billed_duration_ms,memory_gb,cost_usd,cold
void WriteRunBillingCsv(std::ostream& out, const std::vector<SetupRun>& runs);

}  // namespace fusesim
