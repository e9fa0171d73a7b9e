#pragma once

#include "mechlab/generators.hpp"
#include "mechlab/mechanisms.hpp"
#include "mechlab/unit_density.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mechlab {

inline constexpr std::size_t kDefaultAgentGuard = 12;

/// How hiding deviations are enumerated: every subset of one agent's items,
/// or every single-item deletion from every sub-instance reachable by
/// deletions within one agent (enough to expose any profitable subset hiding,
/// one item at a time).
enum class SpMode { FullSubsets, SingleItemClosure };

/// How lotteries are compared: arm by arm (labels matched), or by expected
/// agent value.
enum class SpSemantics { Universal, Expectation };

std::string_view to_string(SpMode mode);
std::string_view to_string(SpSemantics semantics);
SpMode parse_sp_mode(std::string_view token);
SpSemantics parse_sp_semantics(std::string_view token);

/// One hiding move: from `base` (the original instance minus `pre_hidden`),
/// the agent additionally withholds `hidden`. FullSubsets keeps pre_hidden
/// empty and base equal to the audited instance.
struct Deviation {
  int agent = 0;
  std::vector<int> pre_hidden;
  std::vector<int> hidden;
  Instance base;
  Instance result;
};

std::vector<Deviation> enumerate_deviations(const Instance& instance, SpMode mode,
                                            std::size_t per_agent_guard = kDefaultAgentGuard);

struct SpViolation {
  int agent = 0;
  std::vector<int> pre_hidden;
  std::vector<int> hidden;
  std::string branch;  // arm label under universal semantics, empty otherwise
  Rational truthful_value;
  Rational deviant_value;
  Rational gain;  // deviant - truthful, always > 0
};

struct AuditReport {
  std::string instance_id;
  MechanismId mechanism;
  SpMode sp_mode = SpMode::FullSubsets;
  SpSemantics sp_semantics = SpSemantics::Universal;
  std::vector<SpViolation> violations;
  Rational mechanism_value;  // expected value on the truthful instance
  Rational opt_value;
  Rational ratio;      // defined as 1 when opt_value is 0
  Rational ratio_floor;  // declared guarantee of the mechanism on this instance
  bool degenerate = false;  // instance carries value or size ties
  std::optional<std::string> error;

  bool clean() const { return !error.has_value() && violations.empty() && ratio >= ratio_floor; }
  const SpViolation* worst_violation() const;
};

/// Audits several mechanisms against one instance, sharing the optimum and
/// the derived sub-instances. Per-mechanism failures (domain, guards) land in
/// the report's error field instead of aborting the group.
std::vector<AuditReport> audit_instance_group(std::span<const MechanismId> mechanisms,
                                              const Instance& instance, std::string instance_id,
                                              SpMode mode, SpSemantics semantics,
                                              std::size_t per_agent_guard = kDefaultAgentGuard);

std::vector<SpViolation> audit_strategyproofness(const MechanismId& mechanism,
                                                 const Instance& instance, SpMode mode,
                                                 SpSemantics semantics,
                                                 std::size_t per_agent_guard = kDefaultAgentGuard);

/// Ratio-only report (no deviation search).
AuditReport audit_approximation(const MechanismId& mechanism, const Instance& instance,
                                std::string instance_id = {});

/// Full report: deviation search plus ratio.
AuditReport audit_instance(const MechanismId& mechanism, const Instance& instance,
                           std::string instance_id, SpMode mode, SpSemantics semantics,
                           std::size_t per_agent_guard = kDefaultAgentGuard);

struct MechanismSweepSummary {
  MechanismId mechanism;
  std::size_t instances = 0;
  std::size_t errors = 0;
  std::size_t violation_total = 0;
  std::size_t clean_violation_instances = 0;       // violations on tie-free instances
  std::size_t degenerate_violation_instances = 0;  // violations on instances with ties
  std::size_t floor_breaches = 0;
  std::optional<Rational> min_ratio;
  std::string min_ratio_instance;
  std::optional<Rational> worst_gain;
  std::string worst_gain_instance;

  void absorb(const AuditReport& report);
};

struct SweepOptions {
  SpMode mode = SpMode::FullSubsets;
  SpSemantics semantics = SpSemantics::Universal;
  std::size_t per_agent_guard = kDefaultAgentGuard;
  int threads = 1;
};

struct LabeledInstance {
  std::string id;
  std::optional<Instance> instance;   // empty when generation failed
  std::optional<std::string> error;   // the generation failure, if any
};

using InstanceSource = std::function<std::optional<LabeledInstance>()>;
using ReportSink = std::function<void(const AuditReport&)>;

/// Streams instances from `source` through audit_instance_group, feeding
/// every report to `sink` in deterministic order and accumulating summaries.
/// Per-instance errors become report entries; the sweep always completes.
std::vector<MechanismSweepSummary> run_audit_over(const InstanceSource& source,
                                                  std::span<const MechanismId> mechanisms,
                                                  const SweepOptions& options,
                                                  const ReportSink& sink);

struct SweepResult {
  std::vector<AuditReport> reports;
  std::vector<MechanismSweepSummary> summaries;
};

SweepResult run_sweep(const GeneratorSpec& spec, std::uint64_t count,
                      std::span<const MechanismId> mechanisms, const SweepOptions& options);

enum class ProbeFamily { Det, Rand };

ProbeFamily parse_probe_family(std::string_view token);
std::string_view to_string(ProbeFamily family);

/// Runs a mechanism on a probe pair (full, reduced) and reports both ratios,
/// their minimum, and whether withholding the probe item raised the owning
/// agent's expected value.
struct ProbeReport {
  ProbeFamily family = ProbeFamily::Det;
  int fib_index = 16;
  Rational epsilon;
  MechanismId mechanism;
  std::string full_id;
  std::string reduced_id;
  Rational full_value;
  Rational reduced_value;
  Rational full_opt;
  Rational reduced_opt;
  Rational ratio_full;
  Rational ratio_reduced;
  Rational min_ratio;
  Rational agent_value_full;     // agent 0's expected packed value, truthful
  Rational agent_value_reduced;  // ... after withholding
  bool hiding_safe = true;       // no rise
  bool degenerate = false;
  Rational context_bound;  // family-specific ceiling the min ratio is measured against
};

ProbeReport lower_bound_probe(const MechanismId& mechanism, ProbeFamily family, int fib_index,
                              const Rational& epsilon);

}  // namespace mechlab
