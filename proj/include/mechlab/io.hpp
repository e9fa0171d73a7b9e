#pragma once

#include "mechlab/audit.hpp"
#include "mechlab/instance.hpp"
#include "mechlab/mechanisms.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace mechlab {

using Json = nlohmann::ordered_json;

/// Parses the instance file format: a JSON object with top-level fields
/// `capacity` ("p/q" or integer), `agents` (integer) and `items` (objects
/// with `id`, `owner`, `value` and optional `size`; a missing `size` means
/// the item is unit density). Unknown fields are rejected.
Instance parse_instance_text(const std::string& text);
Instance read_instance(const std::string& path);

std::string instance_to_text(const Instance& instance);
void write_instance(const Instance& instance, const std::string& path);

/// Rationals serialize as format_rational strings; counts as integers.
Json instance_json(const Instance& instance);
Json outcome_json(const Instance& instance, const Outcome& outcome);
Json distribution_json(const Instance& instance, const OutcomeDistribution& distribution);
Json violation_json(const SpViolation& violation);
Json report_json(const AuditReport& report);
Json summary_json(const MechanismSweepSummary& summary);
Json probe_json(const ProbeReport& report);

std::string csv_header();
std::string csv_row(const AuditReport& report);
/// A probe renders as two rows, full then reduced. The full row carries the
/// hiding check: one violation when withholding raised the owner's value.
std::vector<std::string> probe_csv_rows(const ProbeReport& report);

}  // namespace mechlab
