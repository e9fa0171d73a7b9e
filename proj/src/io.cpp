#include "mechlab/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

namespace mechlab {

namespace {

using RawJson = nlohmann::json;

void require_keys(const RawJson& object, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const std::string& where) {
  for (const char* key : required) {
    if (!object.contains(key)) {
      throw InputError(where + ": missing field '" + key + "'");
    }
  }
  for (const auto& [key, value] : object.items()) {
    const auto known = [&](std::initializer_list<const char*> list) {
      for (const char* candidate : list) {
        if (key == candidate) {
          return true;
        }
      }
      return false;
    };
    if (!known(required) && !known(optional)) {
      throw InputError(where + ": unknown field '" + key + "'");
    }
  }
}

Rational rational_field(const RawJson& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (value.is_number_integer()) {
    return Rational(value.get<std::int64_t>());
  }
  throw InputError(where + ": expected an integer or a \"p/q\" string");
}

int int_field(const RawJson& value, const std::string& where) {
  if (!value.is_number_integer()) {
    throw InputError(where + ": expected an integer");
  }
  const std::int64_t raw = value.get<std::int64_t>();
  if (raw < 0 || raw > std::numeric_limits<int>::max()) {
    throw InputError(where + ": out of range");
  }
  return static_cast<int>(raw);
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
  RawJson root;
  try {
    root = RawJson::parse(text);
  } catch (const RawJson::parse_error& e) {
    throw InputError(std::string("instance parse error: ") + e.what());
  }
  if (!root.is_object()) {
    throw InputError("instance file: expected a top-level object");
  }
  require_keys(root, {"capacity", "agents", "items"}, {}, "instance file");
  const Rational capacity = rational_field(root["capacity"], "capacity");
  const int agents = int_field(root["agents"], "agents");
  if (!root["items"].is_array()) {
    throw InputError("items: expected an array");
  }
  std::vector<Item> items;
  items.reserve(root["items"].size());
  std::size_t position = 0;
  for (const RawJson& entry : root["items"]) {
    const std::string where = "items[" + std::to_string(position++) + "]";
    if (!entry.is_object()) {
      throw InputError(where + ": expected an object");
    }
    require_keys(entry, {"id", "owner", "value"}, {"size"}, where);
    const int id = int_field(entry["id"], where + ".id");
    const int owner = int_field(entry["owner"], where + ".owner");
    Rational value = rational_field(entry["value"], where + ".value");
    Rational size =
        entry.contains("size") ? rational_field(entry["size"], where + ".size") : value;
    items.emplace_back(id, owner, std::move(value), std::move(size));
  }
  return Instance(capacity, agents, std::move(items));
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open instance file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance_text(buffer.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json instance_json(const Instance& instance) {
  Json root;
  root["capacity"] = format_rational(instance.capacity());
  root["agents"] = instance.agent_count();
  root["items"] = Json::array();
  for (const Item* item : instance.all_items()) {
    Json entry;
    entry["id"] = item->id;
    entry["owner"] = item->owner;
    entry["value"] = format_rational(item->value);
    if (item->size != item->value) {
      entry["size"] = format_rational(item->size);
    }
    root["items"].push_back(std::move(entry));
  }
  return root;
}

std::string instance_to_text(const Instance& instance) {
  return instance_json(instance).dump(2) + "\n";
}

void write_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InputError("cannot open '" + path + "' for writing");
  }
  out << instance_to_text(instance);
  if (!out.good()) {
    throw Error("failed writing '" + path + "'");
  }
}

Json outcome_json(const Instance& instance, const Outcome& outcome) {
  Json root;
  root["packed"] = outcome.packed;
  root["value"] = format_rational(outcome.value);
  root["size"] = format_rational(outcome.size);
  Json per_agent = Json::array();
  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    per_agent.push_back(format_rational(agent_outcome_value(instance, outcome, agent)));
  }
  root["agent_values"] = std::move(per_agent);
  return root;
}

Json distribution_json(const Instance& instance, const OutcomeDistribution& distribution) {
  Json root;
  root["expected_value"] = format_rational(distribution.expected_value());
  Json branches = Json::array();
  for (const OutcomeBranch& branch : distribution.branches) {
    Json entry;
    entry["label"] = branch.label;
    entry["probability"] = format_rational(branch.probability);
    entry["outcome"] = outcome_json(instance, branch.outcome);
    branches.push_back(std::move(entry));
  }
  root["branches"] = std::move(branches);
  return root;
}

Json violation_json(const SpViolation& violation) {
  Json root;
  root["agent"] = violation.agent;
  root["pre_hidden"] = violation.pre_hidden;
  root["hidden"] = violation.hidden;
  root["branch"] = violation.branch;
  root["truthful_value"] = format_rational(violation.truthful_value);
  root["deviant_value"] = format_rational(violation.deviant_value);
  root["gain"] = format_rational(violation.gain);
  return root;
}

Json report_json(const AuditReport& report) {
  Json root;
  root["instance_id"] = report.instance_id;
  root["mechanism"] = std::string(report.mechanism.base_name());
  if (report.mechanism.beta.has_value()) {
    root["beta"] = format_rational(*report.mechanism.beta);
  } else {
    root["beta"] = nullptr;
  }
  root["sp_mode"] = std::string(to_string(report.sp_mode));
  root["sp_semantics"] = std::string(to_string(report.sp_semantics));
  Json violations = Json::array();
  for (const SpViolation& violation : report.violations) {
    violations.push_back(violation_json(violation));
  }
  root["violations"] = std::move(violations);
  root["mechanism_value"] = format_rational(report.mechanism_value);
  root["opt_value"] = format_rational(report.opt_value);
  root["ratio"] = format_rational(report.ratio);
  root["ratio_floor"] = format_rational(report.ratio_floor);
  root["degenerate"] = report.degenerate;
  if (report.error.has_value()) {
    root["error"] = *report.error;
  } else {
    root["error"] = nullptr;
  }
  return root;
}

Json summary_json(const MechanismSweepSummary& summary) {
  Json root;
  root["mechanism"] = summary.mechanism.str();
  root["instances"] = summary.instances;
  root["errors"] = summary.errors;
  root["violation_total"] = summary.violation_total;
  root["clean_violation_instances"] = summary.clean_violation_instances;
  root["degenerate_violation_instances"] = summary.degenerate_violation_instances;
  root["floor_breaches"] = summary.floor_breaches;
  root["min_ratio"] =
      summary.min_ratio.has_value() ? Json(format_rational(*summary.min_ratio)) : Json(nullptr);
  root["min_ratio_instance"] = summary.min_ratio_instance;
  root["worst_gain"] =
      summary.worst_gain.has_value() ? Json(format_rational(*summary.worst_gain)) : Json(nullptr);
  root["worst_gain_instance"] = summary.worst_gain_instance;
  return root;
}

Json probe_json(const ProbeReport& report) {
  Json root;
  root["family"] = std::string(to_string(report.family));
  root["fib_index"] = report.fib_index;
  root["epsilon"] = format_rational(report.epsilon);
  root["mechanism"] = report.mechanism.str();
  root["full_id"] = report.full_id;
  root["reduced_id"] = report.reduced_id;
  root["full_value"] = format_rational(report.full_value);
  root["reduced_value"] = format_rational(report.reduced_value);
  root["full_opt"] = format_rational(report.full_opt);
  root["reduced_opt"] = format_rational(report.reduced_opt);
  root["ratio_full"] = format_rational(report.ratio_full);
  root["ratio_reduced"] = format_rational(report.ratio_reduced);
  root["min_ratio"] = format_rational(report.min_ratio);
  root["agent_value_full"] = format_rational(report.agent_value_full);
  root["agent_value_reduced"] = format_rational(report.agent_value_reduced);
  root["hiding_safe"] = report.hiding_safe;
  root["degenerate"] = report.degenerate;
  root["context_bound"] = format_rational(report.context_bound);
  return root;
}

std::string csv_header() {
  return "instance_id,mechanism,beta,sp_mode,sp_semantics,violations,worst_gain,"
         "mech_value,opt_value,ratio,degenerate_flag";
}

std::string csv_row(const AuditReport& report) {
  std::ostringstream row;
  row << report.instance_id << ',' << report.mechanism.base_name() << ',';
  if (report.mechanism.beta.has_value()) {
    row << format_rational(*report.mechanism.beta);
  }
  row << ',' << to_string(report.sp_mode) << ',' << to_string(report.sp_semantics) << ','
      << report.violations.size() << ',';
  if (const SpViolation* worst = report.worst_violation()) {
    row << format_rational(worst->gain);
  }
  row << ',';
  if (!report.error.has_value()) {
    row << format_rational(report.mechanism_value) << ','
        << format_rational(report.opt_value) << ',' << format_rational(report.ratio);
  } else {
    row << ",,";
  }
  row << ',' << (report.degenerate ? 1 : 0);
  return row.str();
}

std::vector<std::string> probe_csv_rows(const ProbeReport& report) {
  AuditReport full;
  full.instance_id = report.full_id;
  full.mechanism = report.mechanism;
  full.mechanism_value = report.full_value;
  full.opt_value = report.full_opt;
  full.ratio = report.ratio_full;
  full.degenerate = report.degenerate;
  if (!report.hiding_safe) {
    full.violations.push_back(SpViolation{0,
                                          {},
                                          {},
                                          "",
                                          report.agent_value_full,
                                          report.agent_value_reduced,
                                          report.agent_value_reduced - report.agent_value_full});
  }
  AuditReport reduced;
  reduced.instance_id = report.reduced_id;
  reduced.mechanism = report.mechanism;
  reduced.mechanism_value = report.reduced_value;
  reduced.opt_value = report.reduced_opt;
  reduced.ratio = report.ratio_reduced;
  reduced.degenerate = report.degenerate;
  return {csv_row(full), csv_row(reduced)};
}

}  // namespace mechlab
