#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scalereq/model.hpp"

namespace scalereq {

// RFC-4180 record splitter. Throws CsvError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Reads an operations backlog with header
// name,work,load,threshold_value,threshold_unit.
// Every operation comes back pending with no load output and no bands.
// The rule is accepted for interface symmetry with triage; intake never decides criticality.
std::vector<Operation> ingest_backlog(std::string_view csv, const TriageRule& defaults);

}  // namespace scalereq
