#include "mechlab/audit.hpp"
#include "mechlab/catalog.hpp"
#include "mechlab/io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace {

using namespace mechlab;

std::string human_rational(const Rational& value) {
  std::string out = format_rational(value);
  if (out.find('/') != std::string::npos) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.6g", approx_double(value));
    out += " (~";
    out += buffer;
    out += ")";
  }
  return out;
}

int parse_int_strict(std::string_view text, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(what + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::pair<int, int> parse_range(const std::string& text, const std::string& what) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    const int single = parse_int_strict(text, what);
    return {single, single};
  }
  return {parse_int_strict(std::string_view(text).substr(0, colon), what),
          parse_int_strict(std::string_view(text).substr(colon + 1), what)};
}

struct SourceOpts {
  std::string catalog;
  std::string file;
  std::string kind;
  std::uint64_t index = 0;
  std::string items_range = "1:7";
  std::string agents_range = "1:3";
  std::string max_value = "8";
  std::string max_size = "8";
  unsigned max_denominator = 64;
  std::string capacity;
  std::string capacity_fraction;
  std::uint64_t seed = 0;
  int tie_pool = 3;
  int fib_index = 16;
  std::string epsilon = "1/1000";
};

void add_generator_options(CLI::App* cmd, SourceOpts& opts) {
  cmd->add_option("--kind", opts.kind,
                  "instance family: general-random, unit-density-random, tie-heavy, named, "
                  "probe-det, probe-rand");
  cmd->add_option("--items", opts.items_range, "item count or lo:hi range (default 1:7)");
  cmd->add_option("--agents", opts.agents_range, "agent count or lo:hi range (default 1:3)");
  cmd->add_option("--max-value", opts.max_value, "largest item value (default 8)");
  cmd->add_option("--max-size", opts.max_size, "largest item size (default 8)");
  cmd->add_option("--max-denominator", opts.max_denominator,
                  "largest denominator of generated rationals (default 64)");
  cmd->add_option("--capacity", opts.capacity, "fixed knapsack capacity (default 10)");
  cmd->add_option("--capacity-fraction", opts.capacity_fraction,
                  "capacity as a fraction of total item size");
  cmd->add_option("--seed", opts.seed, "generator seed (also seeds --sample draws)");
  cmd->add_option("--tie-pool", opts.tie_pool, "tie-heavy: number of distinct values");
  cmd->add_option("--k", opts.fib_index, "probe kinds: Fibonacci index (default 16)");
  cmd->add_option("--epsilon", opts.epsilon, "probe-det: capacity shortfall (default 1/1000)");
}

void add_source_options(CLI::App* cmd, SourceOpts& opts) {
  cmd->add_option("--catalog", opts.catalog, "named instance from the built-in catalog");
  cmd->add_option("--file", opts.file, "instance file to load");
  cmd->add_option("--index", opts.index, "index within the generated family (default 0)");
  add_generator_options(cmd, opts);
}

GeneratorSpec build_spec(const SourceOpts& opts) {
  GeneratorSpec spec;
  spec.kind = parse_generator_kind(opts.kind);
  const auto [min_items, max_items] = parse_range(opts.items_range, "--items");
  spec.min_items = min_items;
  spec.max_items = max_items;
  const auto [min_agents, max_agents] = parse_range(opts.agents_range, "--agents");
  spec.min_agents = min_agents;
  spec.max_agents = max_agents;
  spec.max_value = parse_rational(opts.max_value);
  spec.max_size = parse_rational(opts.max_size);
  spec.max_denominator = opts.max_denominator;
  if (!opts.capacity.empty() && !opts.capacity_fraction.empty()) {
    throw InputError("--capacity and --capacity-fraction are mutually exclusive");
  }
  if (!opts.capacity_fraction.empty()) {
    spec.capacity_rule = {CapacityRule::Kind::FractionOfTotalSize,
                          parse_rational(opts.capacity_fraction)};
  } else if (!opts.capacity.empty()) {
    spec.capacity_rule = {CapacityRule::Kind::Fixed, parse_rational(opts.capacity)};
  }
  spec.seed = opts.seed;
  spec.tie_pool = opts.tie_pool;
  spec.fib_index = opts.fib_index;
  spec.epsilon = parse_rational(opts.epsilon);
  spec.validate();
  return spec;
}

struct Resolved {
  Instance instance;
  std::string label;
};

Resolved resolve_instance(const SourceOpts& opts) {
  const int sources =
      (opts.catalog.empty() ? 0 : 1) + (opts.file.empty() ? 0 : 1) + (opts.kind.empty() ? 0 : 1);
  if (sources != 1) {
    throw InputError("choose exactly one instance source: --catalog, --file or --kind");
  }
  if (!opts.catalog.empty()) {
    return {catalog_instance(opts.catalog), opts.catalog};
  }
  if (!opts.file.empty()) {
    return {read_instance(opts.file), opts.file};
  }
  const GeneratorSpec spec = build_spec(opts);
  return {generate(spec, opts.index), instance_label(spec, opts.index)};
}

MechanismId resolve_mechanism(const std::string& token, const std::string& beta_override) {
  MechanismId id = MechanismId::parse(token);
  if (!beta_override.empty()) {
    if (id.name != MechanismName::FitTwo) {
      throw InputError("--beta only applies to fit_two");
    }
    id.beta = parse_rational(beta_override);
  }
  return id;
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary | std::ios::trunc);
      if (!file) {
        throw InputError("cannot open '" + path + "' for writing");
      }
      stream = &file;
    }
  }
  std::ostream& out() { return *stream; }
};

void check_format(const std::string& format, bool csv_allowed) {
  if (format == "human" || format == "json" || (csv_allowed && format == "csv")) {
    return;
  }
  throw InputError("unsupported format '" + format + "'");
}

void print_ids(std::ostream& os, const std::vector<int>& ids) {
  if (ids.empty()) {
    os << "(none)";
    return;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    os << (i == 0 ? "" : " ") << ids[i];
  }
}

// ---- solve ----------------------------------------------------------------

int cmd_solve(const SourceOpts& source, const std::string& format, const std::string& out_path) {
  check_format(format, false);
  const Resolved resolved = resolve_instance(source);
  const Instance& instance = resolved.instance;
  const Outcome opt = solve_opt(instance);
  const FractionalGreedySolution frac = fractional_greedy(instance);
  Output output(out_path);
  std::ostream& os = output.out();

  if (format == "json") {
    Json root;
    root["instance_id"] = resolved.label;
    root["capacity"] = format_rational(instance.capacity());
    root["agents"] = instance.agent_count();
    root["items"] = instance.items().size();
    root["opt"] = outcome_json(instance, opt);
    Json fractional;
    fractional["order"] = frac.order;
    Json shares = Json::array();
    for (const Rational& share : frac.fractions) {
      shares.push_back(format_rational(share));
    }
    fractional["fractions"] = std::move(shares);
    fractional["full_count"] = frac.full_count;
    fractional["split_item"] =
        frac.split_item.has_value() ? Json(*frac.split_item) : Json(nullptr);
    fractional["value"] = format_rational(frac.packed_value(instance));
    fractional["size"] = format_rational(frac.packed_size(instance));
    root["fractional"] = std::move(fractional);
    os << root.dump(2) << "\n";
    return 0;
  }

  os << "instance: " << resolved.label << "\n";
  os << "capacity: " << human_rational(instance.capacity()) << "\n";
  os << "agents: " << instance.agent_count() << "\n";
  os << "items: " << instance.items().size() << "\n";
  os << "opt value: " << human_rational(opt.value) << "\n";
  os << "opt size: " << human_rational(opt.size) << "\n";
  os << "opt packed ids: ";
  print_ids(os, opt.packed);
  os << "\n";
  std::vector<const Item*> packed;
  for (int id : opt.packed) {
    packed.push_back(&instance.at(id));
  }
  std::sort(packed.begin(), packed.end(),
            [](const Item* a, const Item* b) { return value_before(*a, *b); });
  os << "opt packed values:";
  if (packed.empty()) {
    os << " (none)";
  }
  for (const Item* item : packed) {
    os << " " << format_rational(item->value);
  }
  os << "\n";
  os << "fractional order: ";
  print_ids(os, frac.order);
  os << "\n";
  os << "fractional shares:";
  for (const Rational& share : frac.fractions) {
    os << " " << format_rational(share);
  }
  if (frac.fractions.empty()) {
    os << " (none)";
  }
  os << "\n";
  os << "fully packed prefix: " << frac.full_count << "\n";
  os << "split item: ";
  if (frac.split_item.has_value()) {
    os << *frac.split_item;
  } else {
    os << "(none)";
  }
  os << "\n";
  os << "fractional value: " << human_rational(frac.packed_value(instance)) << "\n";
  return 0;
}

// ---- run ------------------------------------------------------------------

std::vector<std::uint64_t> sample_branches(const OutcomeDistribution& distribution,
                                           std::uint64_t draws, std::uint64_t seed) {
  std::vector<std::uint64_t> counts(distribution.branches.size(), 0);
  const Rational scale{BigInt(1) << 64};
  std::vector<Rational> cutoffs;
  Rational cumulative = 0;
  for (const OutcomeBranch& branch : distribution.branches) {
    cumulative += branch.probability;
    cutoffs.push_back(cumulative * scale);
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < draws; ++i) {
    const Rational draw{BigInt(rng())};
    std::size_t pick = 0;
    while (pick + 1 < cutoffs.size() && draw >= cutoffs[pick]) {
      ++pick;
    }
    ++counts[pick];
  }
  return counts;
}

int cmd_run(const SourceOpts& source, const std::string& mech_token,
            const std::string& beta_override, std::uint64_t samples, const std::string& format,
            const std::string& out_path) {
  check_format(format, false);
  const Resolved resolved = resolve_instance(source);
  const Instance& instance = resolved.instance;
  const MechanismId mechanism = resolve_mechanism(mech_token, beta_override);
  const OutcomeDistribution distribution = run_mechanism(mechanism, instance);
  const Outcome opt = solve_opt(instance);
  const Rational expected = distribution.expected_value();
  const Rational ratio = opt.value > 0 ? Rational(expected / opt.value) : Rational(1);
  std::vector<std::uint64_t> counts;
  if (samples > 0) {
    counts = sample_branches(distribution, samples, source.seed);
  }
  Output output(out_path);
  std::ostream& os = output.out();

  if (format == "json") {
    Json root;
    root["instance_id"] = resolved.label;
    root["mechanism"] = mechanism.str();
    root["distribution"] = distribution_json(instance, distribution);
    Json agents = Json::array();
    for (int agent = 0; agent < instance.agent_count(); ++agent) {
      agents.push_back(format_rational(distribution.expected_agent_value(instance, agent)));
    }
    root["expected_agent_values"] = std::move(agents);
    root["opt_value"] = format_rational(opt.value);
    root["ratio"] = format_rational(ratio);
    if (samples > 0) {
      Json sampled;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        sampled[distribution.branches[i].label] = counts[i];
      }
      root["samples"] = std::move(sampled);
    } else {
      root["samples"] = nullptr;
    }
    os << root.dump(2) << "\n";
    return 0;
  }

  os << "instance: " << resolved.label << "\n";
  os << "mechanism: " << mechanism.str() << "\n";
  for (const OutcomeBranch& branch : distribution.branches) {
    os << "branch " << format_rational(branch.probability) << " " << branch.label << ": value "
       << human_rational(branch.outcome.value) << ", packed ";
    print_ids(os, branch.outcome.packed);
    os << "\n";
  }
  os << "expected value: " << human_rational(expected) << "\n";
  os << "expected agent values:";
  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    os << " " << format_rational(distribution.expected_agent_value(instance, agent));
  }
  os << "\n";
  os << "opt value: " << human_rational(opt.value) << "\n";
  os << "ratio: " << human_rational(ratio) << "\n";
  if (samples > 0) {
    os << "samples (" << samples << ", seed " << source.seed << "):";
    for (std::size_t i = 0; i < counts.size(); ++i) {
      os << " " << distribution.branches[i].label << ":" << counts[i];
    }
    os << "\n";
  }
  return 0;
}

// ---- audit ----------------------------------------------------------------

void print_report_human(std::ostream& os, const AuditReport& report) {
  os << "instance: " << report.instance_id << "\n";
  os << "mechanism: " << report.mechanism.str() << "\n";
  os << "mode: " << to_string(report.sp_mode)
     << "  semantics: " << to_string(report.sp_semantics) << "\n";
  if (report.error.has_value()) {
    os << "error: " << *report.error << "\n";
    return;
  }
  os << "mechanism value: " << human_rational(report.mechanism_value) << "\n";
  os << "opt value: " << human_rational(report.opt_value) << "\n";
  os << "ratio: " << human_rational(report.ratio) << "\n";
  os << "declared floor: " << human_rational(report.ratio_floor) << "\n";
  os << "degenerate: " << (report.degenerate ? "yes" : "no") << "\n";
  os << "violations: " << report.violations.size() << "\n";
  for (const SpViolation& violation : report.violations) {
    os << "  agent " << violation.agent;
    if (!violation.pre_hidden.empty()) {
      os << " (already hiding ";
      print_ids(os, violation.pre_hidden);
      os << ")";
    }
    os << " hides ";
    print_ids(os, violation.hidden);
    if (!violation.branch.empty()) {
      os << " [" << violation.branch << "]";
    }
    os << ": " << format_rational(violation.truthful_value) << " -> "
       << format_rational(violation.deviant_value) << " (gain "
       << format_rational(violation.gain) << ")\n";
  }
}

int cmd_audit(const SourceOpts& source, const std::string& mech_token,
              const std::string& beta_override, const std::string& mode_token,
              const std::string& semantics_token, std::size_t guard, const std::string& format,
              const std::string& out_path) {
  check_format(format, true);
  const Resolved resolved = resolve_instance(source);
  const MechanismId mechanism = resolve_mechanism(mech_token, beta_override);
  const SpMode mode = parse_sp_mode(mode_token);
  const SpSemantics semantics = parse_sp_semantics(semantics_token);
  const AuditReport report =
      audit_instance(mechanism, resolved.instance, resolved.label, mode, semantics, guard);
  Output output(out_path);
  std::ostream& os = output.out();
  if (format == "csv") {
    os << csv_header() << "\n" << csv_row(report) << "\n";
  } else if (format == "json") {
    os << report_json(report).dump(2) << "\n";
  } else {
    print_report_human(os, report);
  }
  return report.clean() ? 0 : 1;
}

// ---- sweep ----------------------------------------------------------------

void print_summary_human(std::ostream& os, const MechanismSweepSummary& summary) {
  os << "mechanism " << summary.mechanism.str() << ": instances " << summary.instances
     << ", errors " << summary.errors << ", violations " << summary.violation_total
     << " (on clean " << summary.clean_violation_instances << ", on degenerate "
     << summary.degenerate_violation_instances << " instances), floor breaches "
     << summary.floor_breaches;
  if (summary.min_ratio.has_value()) {
    os << ", min ratio " << human_rational(*summary.min_ratio) << " at "
       << summary.min_ratio_instance;
  }
  if (summary.worst_gain.has_value()) {
    os << ", worst gain " << human_rational(*summary.worst_gain) << " at "
       << summary.worst_gain_instance;
  }
  os << "\n";
}

int cmd_sweep(const SourceOpts& source, std::uint64_t count, const std::string& mechs_token,
              const std::string& mode_token, const std::string& semantics_token,
              std::size_t guard, int threads, const std::string& format,
              const std::string& out_path) {
  check_format(format, true);
  if (source.kind.empty()) {
    throw InputError("sweep draws from a generator; pass --kind");
  }
  const GeneratorSpec spec = build_spec(source);
  const std::vector<MechanismId> mechanisms = MechanismId::parse_list(mechs_token);
  SweepOptions options;
  options.mode = parse_sp_mode(mode_token);
  options.semantics = parse_sp_semantics(semantics_token);
  options.per_agent_guard = guard;
  options.threads =
      threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency());

  Output output(out_path);
  std::ostream& os = output.out();
  bool all_clean = true;
  std::uint64_t index = 0;
  const InstanceSource instance_source = [&]() -> std::optional<LabeledInstance> {
    if (index >= count) {
      return std::nullopt;
    }
    const std::uint64_t current = index++;
    LabeledInstance labeled;
    labeled.id = instance_label(spec, current);
    try {
      labeled.instance = generate(spec, current);
    } catch (const Error& e) {
      labeled.error = e.what();
    }
    return labeled;
  };

  std::vector<AuditReport> collected;
  if (format == "csv") {
    os << csv_header() << "\n";
  }
  const ReportSink sink = [&](const AuditReport& report) {
    all_clean = all_clean && report.clean();
    if (format == "csv") {
      os << csv_row(report) << "\n";
    } else if (format == "json") {
      collected.push_back(report);
    }
  };
  const std::vector<MechanismSweepSummary> summaries =
      run_audit_over(instance_source, mechanisms, options, sink);

  if (format == "json") {
    Json root;
    Json reports = Json::array();
    for (const AuditReport& report : collected) {
      reports.push_back(report_json(report));
    }
    root["reports"] = std::move(reports);
    Json summary_list = Json::array();
    for (const MechanismSweepSummary& summary : summaries) {
      summary_list.push_back(summary_json(summary));
    }
    root["summaries"] = std::move(summary_list);
    os << root.dump(2) << "\n";
  } else if (format == "human") {
    os << "sweep " << to_string(spec.kind) << " seed " << spec.seed << " count " << count
       << "\n";
    for (const MechanismSweepSummary& summary : summaries) {
      print_summary_human(os, summary);
    }
  }
  return all_clean ? 0 : 1;
}

// ---- probe ----------------------------------------------------------------

int cmd_probe(const std::string& family_token, int fib_index, const std::string& epsilon_token,
              const std::string& mech_token, const std::string& beta_override,
              const std::string& format, const std::string& out_path) {
  check_format(format, true);
  const ProbeFamily family = parse_probe_family(family_token);
  const MechanismId mechanism = resolve_mechanism(mech_token, beta_override);
  const ProbeReport report =
      lower_bound_probe(mechanism, family, fib_index, parse_rational(epsilon_token));
  Output output(out_path);
  std::ostream& os = output.out();

  if (format == "csv") {
    os << csv_header() << "\n";
    for (const std::string& row : probe_csv_rows(report)) {
      os << row << "\n";
    }
  } else if (format == "json") {
    os << probe_json(report).dump(2) << "\n";
  } else {
    os << "probe: " << to_string(report.family) << " (k = " << report.fib_index;
    if (report.family == ProbeFamily::Det) {
      os << ", epsilon = " << format_rational(report.epsilon);
    }
    os << ")\n";
    os << "mechanism: " << report.mechanism.str() << "\n";
    os << "full instance " << report.full_id << ": value "
       << human_rational(report.full_value) << ", opt " << human_rational(report.full_opt)
       << ", ratio " << human_rational(report.ratio_full) << "\n";
    os << "reduced instance " << report.reduced_id << ": value "
       << human_rational(report.reduced_value) << ", opt "
       << human_rational(report.reduced_opt) << ", ratio "
       << human_rational(report.ratio_reduced) << "\n";
    os << "min ratio: " << human_rational(report.min_ratio) << "\n";
    os << "context bound: " << human_rational(report.context_bound) << "\n";
    os << "owner value truthful: " << human_rational(report.agent_value_full) << "\n";
    os << "owner value withholding: " << human_rational(report.agent_value_reduced) << "\n";
    os << "withholding profitable: " << (report.hiding_safe ? "no" : "yes") << "\n";
    os << "degenerate: " << (report.degenerate ? "yes" : "no") << "\n";
  }
  const Rational floor = mechanism.ratio_floor(2);
  const bool clean =
      report.hiding_safe && report.ratio_full >= floor && report.ratio_reduced >= floor;
  return clean ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact strategyproof knapsack mechanisms: solve, run, audit, sweep, probe."};
  app.require_subcommand(1);

  SourceOpts source;
  std::string format = "human";
  std::string out_path;
  std::string mechanism;
  std::string mechanisms;
  std::string beta_override;
  std::string mode_token = "full-subsets";
  std::string semantics_token = "universal";
  std::string family_token;
  std::string epsilon_token = "1/1000";
  int fib_index = 16;
  std::uint64_t samples = 0;
  std::uint64_t count = 100;
  std::size_t guard = kDefaultAgentGuard;
  int threads = 0;
  int exit_code = 0;

  CLI::App* solve = app.add_subcommand("solve", "exact optimum and the relaxed packing");
  add_source_options(solve, source);
  solve->add_option("--format", format, "human or json");
  solve->add_option("--out", out_path, "write the report to a file");
  solve->callback([&] { exit_code = cmd_solve(source, format, out_path); });

  CLI::App* run = app.add_subcommand("run", "run one mechanism on one instance");
  add_source_options(run, source);
  run->add_option("--mechanism", mechanism, "mechanism, e.g. greedy or fit_two:987/1597")
      ->required();
  run->add_option("--beta", beta_override, "fit_two threshold, overrides the colon syntax");
  run->add_option("--sample", samples, "draw this many branch samples (seeded by --seed)");
  run->add_option("--format", format, "human or json");
  run->add_option("--out", out_path, "write the report to a file");
  run->callback(
      [&] { exit_code = cmd_run(source, mechanism, beta_override, samples, format, out_path); });

  CLI::App* audit = app.add_subcommand("audit", "deviation search plus ratio on one instance");
  add_source_options(audit, source);
  audit->add_option("--mechanism", mechanism, "mechanism to audit")->required();
  audit->add_option("--beta", beta_override, "fit_two threshold, overrides the colon syntax");
  audit->add_option("--mode", mode_token, "full-subsets or single-item-closure");
  audit->add_option("--semantics", semantics_token, "universal or expectation");
  audit->add_option("--max-agent-items", guard, "per-agent deviation guard (default 12)");
  audit->add_option("--format", format, "human, json or csv");
  audit->add_option("--out", out_path, "write the report to a file");
  audit->callback([&] {
    exit_code = cmd_audit(source, mechanism, beta_override, mode_token, semantics_token, guard,
                          format, out_path);
  });

  CLI::App* sweep = app.add_subcommand("sweep", "audit mechanisms across a generated family");
  add_generator_options(sweep, source);
  sweep->add_option("--count", count, "number of instances (default 100)");
  sweep->add_option("--mechanisms", mechanisms, "comma-separated mechanism list")->required();
  sweep->add_option("--mode", mode_token, "full-subsets or single-item-closure");
  sweep->add_option("--semantics", semantics_token, "universal or expectation");
  sweep->add_option("--max-agent-items", guard, "per-agent deviation guard (default 12)");
  sweep->add_option("--threads", threads, "parallel audit workers (default: all cores)");
  sweep->add_option("--format", format, "human, json or csv");
  sweep->add_option("--out", out_path, "write the report to a file");
  sweep->callback([&] {
    exit_code = cmd_sweep(source, count, mechanisms, mode_token, semantics_token, guard,
                          threads, format, out_path);
  });

  CLI::App* probe = app.add_subcommand("probe", "run a mechanism on a designed hard pair");
  probe->add_option("--family", family_token, "det or rand")->required();
  probe->add_option("--k", fib_index, "Fibonacci index (default 16)");
  probe->add_option("--epsilon", epsilon_token, "det family: capacity shortfall");
  probe->add_option("--mechanism", mechanism, "mechanism to probe")->required();
  probe->add_option("--beta", beta_override, "fit_two threshold, overrides the colon syntax");
  probe->add_option("--format", format, "human, json or csv");
  probe->add_option("--out", out_path, "write the report to a file");
  probe->callback([&] {
    exit_code = cmd_probe(family_token, fib_index, epsilon_token, mechanism, beta_override,
                          format, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ApplicabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
