#include "mechlab/audit.hpp"

#include "mechlab/catalog.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>
#include <utility>

namespace mechlab {

std::string_view to_string(SpMode mode) {
  return mode == SpMode::FullSubsets ? "full_subsets" : "single_item_closure";
}

std::string_view to_string(SpSemantics semantics) {
  return semantics == SpSemantics::Universal ? "universal" : "expectation";
}

SpMode parse_sp_mode(std::string_view token) {
  if (token == "full_subsets" || token == "full-subsets") {
    return SpMode::FullSubsets;
  }
  if (token == "single_item_closure" || token == "single-item-closure") {
    return SpMode::SingleItemClosure;
  }
  throw InputError("unknown deviation mode '" + std::string(token) + "'");
}

SpSemantics parse_sp_semantics(std::string_view token) {
  if (token == "universal") {
    return SpSemantics::Universal;
  }
  if (token == "expectation") {
    return SpSemantics::Expectation;
  }
  throw InputError("unknown audit semantics '" + std::string(token) + "'");
}

std::string_view to_string(ProbeFamily family) {
  return family == ProbeFamily::Det ? "det" : "rand";
}

ProbeFamily parse_probe_family(std::string_view token) {
  if (token == "det") {
    return ProbeFamily::Det;
  }
  if (token == "rand") {
    return ProbeFamily::Rand;
  }
  throw InputError("unknown probe family '" + std::string(token) + "'");
}

namespace {

std::vector<int> mask_ids(const std::vector<int>& ids, std::uint64_t mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(ids[static_cast<std::size_t>(std::countr_zero(mask))]);
    mask &= mask - 1;
  }
  return out;
}

void check_agent_guard(int agent, std::size_t count, std::size_t guard) {
  if (count > guard) {
    throw SizeGuardError("agent " + std::to_string(agent) + " holds " + std::to_string(count) +
                         " items; the deviation guard allows " + std::to_string(guard));
  }
}

}  // namespace

std::vector<Deviation> enumerate_deviations(const Instance& instance, SpMode mode,
                                            std::size_t per_agent_guard) {
  std::vector<Deviation> out;
  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    const std::vector<int> own = instance.agent_item_ids(agent);
    if (own.empty()) {
      continue;
    }
    check_agent_guard(agent, own.size(), per_agent_guard);
    const std::uint64_t masks = std::uint64_t(1) << own.size();
    if (mode == SpMode::FullSubsets) {
      for (std::uint64_t mask = 1; mask < masks; ++mask) {
        std::vector<int> hidden = mask_ids(own, mask);
        Instance result = instance.without(hidden);
        out.push_back(Deviation{agent, {}, std::move(hidden), instance, std::move(result)});
      }
    } else {
      for (std::uint64_t base = 0; base < masks; ++base) {
        const std::vector<int> pre = mask_ids(own, base);
        const Instance base_instance = instance.without(pre);
        for (std::size_t bit = 0; bit < own.size(); ++bit) {
          if (base & (std::uint64_t(1) << bit)) {
            continue;
          }
          std::vector<int> hidden = {own[bit]};
          Instance result = base_instance.without(hidden);
          out.push_back(
              Deviation{agent, pre, std::move(hidden), base_instance, std::move(result)});
        }
      }
    }
  }
  return out;
}

const SpViolation* AuditReport::worst_violation() const {
  const SpViolation* worst = nullptr;
  for (const SpViolation& violation : violations) {
    if (worst == nullptr || violation.gain > worst->gain) {
      worst = &violation;
    }
  }
  return worst;
}

namespace {

/// The deviating agent's packed value under every arm, plus the expectation.
struct ArmValues {
  std::vector<Rational> per_arm;
  Rational expected;
};

ArmValues arm_values(const Instance& universe, const OutcomeDistribution& distribution,
                     int agent) {
  ArmValues out;
  out.expected = 0;
  out.per_arm.reserve(distribution.branches.size());
  for (const OutcomeBranch& branch : distribution.branches) {
    Rational mine = 0;
    for (int id : branch.outcome.packed) {
      const Item& item = universe.at(id);
      if (item.owner == agent) {
        mine += item.value;
      }
    }
    out.expected += branch.probability * mine;
    out.per_arm.push_back(std::move(mine));
  }
  return out;
}

void compare_and_record(const MechanismId& mechanism, const OutcomeDistribution& truthful_dist,
                        SpSemantics semantics, const ArmValues& before, const ArmValues& after,
                        int agent, const std::vector<int>& pre_hidden,
                        const std::vector<int>& hidden, std::vector<SpViolation>& sink) {
  if (semantics == SpSemantics::Expectation) {
    if (after.expected > before.expected) {
      sink.push_back(SpViolation{agent, pre_hidden, hidden, "", before.expected, after.expected,
                                 after.expected - before.expected});
    }
    return;
  }
  if (before.per_arm.size() != after.per_arm.size()) {
    throw Error("mechanism " + mechanism.str() + " changed its arm structure between instances");
  }
  for (std::size_t arm = 0; arm < before.per_arm.size(); ++arm) {
    if (after.per_arm[arm] > before.per_arm[arm]) {
      sink.push_back(SpViolation{agent, pre_hidden, hidden,
                                 truthful_dist.branches[arm].label, before.per_arm[arm],
                                 after.per_arm[arm], after.per_arm[arm] - before.per_arm[arm]});
    }
  }
}

}  // namespace

namespace {

std::vector<AuditReport> group_impl(std::span<const MechanismId> mechanisms,
                                    const Instance& instance, std::string instance_id,
                                    SpMode mode, SpSemantics semantics,
                                    std::size_t per_agent_guard, bool propagate) {
  std::vector<AuditReport> reports(mechanisms.size());
  for (std::size_t i = 0; i < mechanisms.size(); ++i) {
    reports[i].instance_id = instance_id;
    reports[i].mechanism = mechanisms[i];
    reports[i].sp_mode = mode;
    reports[i].sp_semantics = semantics;
    reports[i].degenerate = instance.has_ties();
    reports[i].ratio_floor = mechanisms[i].ratio_floor(instance.agent_count());
  }

  Outcome opt;
  try {
    opt = solve_opt(instance);
  } catch (const Error& e) {
    if (propagate) {
      throw;
    }
    for (AuditReport& report : reports) {
      report.error = e.what();
    }
    return reports;
  }

  std::vector<std::optional<OutcomeDistribution>> truthful(mechanisms.size());
  for (std::size_t i = 0; i < mechanisms.size(); ++i) {
    reports[i].opt_value = opt.value;
    try {
      truthful[i] = run_mechanism(mechanisms[i], instance);
      reports[i].mechanism_value = truthful[i]->expected_value();
      reports[i].ratio =
          opt.value > 0 ? Rational(reports[i].mechanism_value / opt.value) : Rational(1);
    } catch (const Error& e) {
      if (propagate) {
        throw;
      }
      reports[i].error = e.what();
    }
  }

  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    const std::vector<int> own = instance.agent_item_ids(agent);
    if (own.empty()) {
      continue;
    }
    try {
      check_agent_guard(agent, own.size(), per_agent_guard);
    } catch (const Error& e) {
      if (propagate) {
        throw;
      }
      for (AuditReport& report : reports) {
        if (!report.error.has_value()) {
          report.error = e.what();
        }
      }
      return reports;
    }

    const std::uint64_t masks = std::uint64_t(1) << own.size();
    // values[mask][mech]: the agent's packed values after withholding `mask`.
    std::vector<std::vector<std::optional<ArmValues>>> values(
        masks, std::vector<std::optional<ArmValues>>(mechanisms.size()));
    for (std::size_t i = 0; i < mechanisms.size(); ++i) {
      if (truthful[i].has_value()) {
        values[0][i] = arm_values(instance, *truthful[i], agent);
      }
    }
    for (std::uint64_t mask = 1; mask < masks; ++mask) {
      const std::vector<int> hidden = mask_ids(own, mask);
      const Instance sub = instance.without(hidden);
      for (std::size_t i = 0; i < mechanisms.size(); ++i) {
        if (!truthful[i].has_value() || reports[i].error.has_value()) {
          continue;
        }
        try {
          const OutcomeDistribution dist = run_mechanism(mechanisms[i], sub);
          values[mask][i] = arm_values(instance, dist, agent);
        } catch (const Error& e) {
          if (propagate) {
            throw;
          }
          reports[i].error = e.what();
        }
      }
    }

    for (std::size_t i = 0; i < mechanisms.size(); ++i) {
      if (!truthful[i].has_value() || reports[i].error.has_value()) {
        continue;
      }
      if (mode == SpMode::FullSubsets) {
        for (std::uint64_t mask = 1; mask < masks; ++mask) {
          compare_and_record(mechanisms[i], *truthful[i], semantics, *values[0][i],
                             *values[mask][i], agent, {}, mask_ids(own, mask),
                             reports[i].violations);
        }
      } else {
        for (std::uint64_t base = 0; base < masks; ++base) {
          for (std::size_t bit = 0; bit < own.size(); ++bit) {
            if (base & (std::uint64_t(1) << bit)) {
              continue;
            }
            const std::uint64_t next = base | (std::uint64_t(1) << bit);
            compare_and_record(mechanisms[i], *truthful[i], semantics, *values[base][i],
                               *values[next][i], agent, mask_ids(own, base), {own[bit]},
                               reports[i].violations);
          }
        }
      }
    }
  }
  return reports;
}

}  // namespace

std::vector<AuditReport> audit_instance_group(std::span<const MechanismId> mechanisms,
                                              const Instance& instance, std::string instance_id,
                                              SpMode mode, SpSemantics semantics,
                                              std::size_t per_agent_guard) {
  return group_impl(mechanisms, instance, std::move(instance_id), mode, semantics,
                    per_agent_guard, /*propagate=*/false);
}

std::vector<SpViolation> audit_strategyproofness(const MechanismId& mechanism,
                                                 const Instance& instance, SpMode mode,
                                                 SpSemantics semantics,
                                                 std::size_t per_agent_guard) {
  const MechanismId ids[] = {mechanism};
  std::vector<AuditReport> reports =
      group_impl(ids, instance, "", mode, semantics, per_agent_guard, /*propagate=*/true);
  return std::move(reports.front().violations);
}

AuditReport audit_approximation(const MechanismId& mechanism, const Instance& instance,
                                std::string instance_id) {
  AuditReport report;
  report.instance_id = std::move(instance_id);
  report.mechanism = mechanism;
  report.degenerate = instance.has_ties();
  report.ratio_floor = mechanism.ratio_floor(instance.agent_count());
  const Outcome opt = solve_opt(instance);
  report.opt_value = opt.value;
  const OutcomeDistribution dist = run_mechanism(mechanism, instance);
  report.mechanism_value = dist.expected_value();
  report.ratio = opt.value > 0 ? Rational(report.mechanism_value / opt.value) : Rational(1);
  return report;
}

AuditReport audit_instance(const MechanismId& mechanism, const Instance& instance,
                           std::string instance_id, SpMode mode, SpSemantics semantics,
                           std::size_t per_agent_guard) {
  const MechanismId ids[] = {mechanism};
  std::vector<AuditReport> reports =
      group_impl(ids, instance, std::move(instance_id), mode, semantics, per_agent_guard,
                 /*propagate=*/true);
  return std::move(reports.front());
}

void MechanismSweepSummary::absorb(const AuditReport& report) {
  ++instances;
  if (report.error.has_value()) {
    ++errors;
    return;
  }
  violation_total += report.violations.size();
  if (!report.violations.empty()) {
    if (report.degenerate) {
      ++degenerate_violation_instances;
    } else {
      ++clean_violation_instances;
    }
    const SpViolation* worst = report.worst_violation();
    if (!worst_gain.has_value() || worst->gain > *worst_gain) {
      worst_gain = worst->gain;
      worst_gain_instance = report.instance_id;
    }
  }
  if (report.ratio < report.ratio_floor) {
    ++floor_breaches;
  }
  if (!min_ratio.has_value() || report.ratio < *min_ratio) {
    min_ratio = report.ratio;
    min_ratio_instance = report.instance_id;
  }
}

namespace {

std::vector<AuditReport> error_reports(std::span<const MechanismId> mechanisms,
                                       const LabeledInstance& labeled) {
  std::vector<AuditReport> reports(mechanisms.size());
  for (std::size_t i = 0; i < mechanisms.size(); ++i) {
    reports[i].instance_id = labeled.id;
    reports[i].mechanism = mechanisms[i];
    reports[i].error = labeled.error.value_or("instance unavailable");
  }
  return reports;
}

}  // namespace

std::vector<MechanismSweepSummary> run_audit_over(const InstanceSource& source,
                                                  std::span<const MechanismId> mechanisms,
                                                  const SweepOptions& options,
                                                  const ReportSink& sink) {
  std::vector<MechanismSweepSummary> summaries(mechanisms.size());
  for (std::size_t i = 0; i < mechanisms.size(); ++i) {
    summaries[i].mechanism = mechanisms[i];
  }
  const auto consume = [&](const std::vector<AuditReport>& reports) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      summaries[i].absorb(reports[i]);
      sink(reports[i]);
    }
  };
  const auto audit_one = [&](const LabeledInstance& labeled) {
    if (!labeled.instance.has_value()) {
      return error_reports(mechanisms, labeled);
    }
    return audit_instance_group(mechanisms, *labeled.instance, labeled.id, options.mode,
                                options.semantics, options.per_agent_guard);
  };

  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    for (std::optional<LabeledInstance> next = source(); next.has_value(); next = source()) {
      consume(audit_one(*next));
    }
    return summaries;
  }

  const std::size_t batch_size = static_cast<std::size_t>(threads) * 16;
  for (;;) {
    std::vector<LabeledInstance> batch;
    batch.reserve(batch_size);
    for (std::size_t i = 0; i < batch_size; ++i) {
      std::optional<LabeledInstance> next = source();
      if (!next.has_value()) {
        break;
      }
      batch.push_back(std::move(*next));
    }
    if (batch.empty()) {
      break;
    }
    std::vector<std::vector<AuditReport>> results(batch.size());
    std::vector<std::thread> workers;
    const std::size_t stride = (batch.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = static_cast<std::size_t>(t) * stride;
      const std::size_t end = std::min(batch.size(), begin + stride);
      if (begin >= end) {
        break;
      }
      workers.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) {
          results[i] = audit_one(batch[i]);
        }
      });
    }
    for (std::thread& worker : workers) {
      worker.join();
    }
    for (const std::vector<AuditReport>& reports : results) {
      consume(reports);
    }
    if (batch.size() < batch_size) {
      break;
    }
  }
  return summaries;
}

SweepResult run_sweep(const GeneratorSpec& spec, std::uint64_t count,
                      std::span<const MechanismId> mechanisms, const SweepOptions& options) {
  spec.validate();
  SweepResult result;
  std::uint64_t index = 0;
  const InstanceSource source = [&]() -> std::optional<LabeledInstance> {
    if (index >= count) {
      return std::nullopt;
    }
    const std::uint64_t current = index++;
    LabeledInstance out;
    out.id = instance_label(spec, current);
    try {
      out.instance = generate(spec, current);
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  };
  result.summaries = run_audit_over(
      source, mechanisms, options,
      [&](const AuditReport& report) { result.reports.push_back(report); });
  return result;
}

ProbeReport lower_bound_probe(const MechanismId& mechanism, ProbeFamily family, int fib_index,
                              const Rational& epsilon) {
  ProbeReport report;
  report.family = family;
  report.fib_index = fib_index;
  report.epsilon = family == ProbeFamily::Det ? epsilon : Rational(0);
  report.mechanism = mechanism;

  auto [full, reduced] = family == ProbeFamily::Det ? probe_pair_det(fib_index, epsilon)
                                                    : probe_pair_rand(fib_index);
  const std::string stem =
      "probe-" + std::string(to_string(family)) + ":k" + std::to_string(fib_index);
  report.full_id = stem + ":full";
  report.reduced_id = stem + ":reduced";
  report.degenerate = full.has_ties() || reduced.has_ties();

  const OutcomeDistribution dist_full = run_mechanism(mechanism, full);
  const OutcomeDistribution dist_reduced = run_mechanism(mechanism, reduced);
  report.full_value = dist_full.expected_value();
  report.reduced_value = dist_reduced.expected_value();
  report.full_opt = solve_opt(full).value;
  report.reduced_opt = solve_opt(reduced).value;
  report.ratio_full = report.full_opt > 0 ? Rational(report.full_value / report.full_opt)
                                          : Rational(1);
  report.ratio_reduced = report.reduced_opt > 0
                             ? Rational(report.reduced_value / report.reduced_opt)
                             : Rational(1);
  report.min_ratio = std::min(report.ratio_full, report.ratio_reduced);
  report.agent_value_full = dist_full.expected_agent_value(full, 0);
  report.agent_value_reduced = dist_reduced.expected_agent_value(reduced, 0);
  report.hiding_safe = report.agent_value_reduced <= report.agent_value_full;

  const Rational phi = golden_ratio_approx(fib_index);
  if (family == ProbeFamily::Det) {
    report.context_bound = phi / (phi + 1 - epsilon);
  } else {
    report.context_bound = Rational(1) / (5 * phi - 7);
  }
  return report;
}

}  // namespace mechlab
