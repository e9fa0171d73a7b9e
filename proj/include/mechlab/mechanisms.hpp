#pragma once

#include "mechlab/greedy.hpp"
#include "mechlab/opt.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mechlab {

/// One arm of a (possibly degenerate) lottery over outcomes. Labels are
/// stable per mechanism arm so audits can compare arms across instances.
struct OutcomeBranch {
  Rational probability;
  Outcome outcome;
  std::string label;
};

struct OutcomeDistribution {
  std::vector<OutcomeBranch> branches;

  bool deterministic() const { return branches.size() == 1; }
  Rational expected_value() const;
  Rational expected_agent_value(const Instance& instance, int agent) const;
  /// Throws Error unless probabilities are positive and sum to exactly 1.
  void check() const;
};

enum class MechanismName {
  NaiveGreedy,
  Greedy,
  SingleGreedy,
  BestIndividual,
  RandomizedGreedy,
  FitTwo,
  LargeFit,
  RandomizedFit,
};

/// A mechanism selector as it appears on command lines and in reports:
/// "greedy", "fit_two:987/1597", ... FitTwo carries its threshold parameter;
/// parsing fills in the default 987/1597 when omitted.
struct MechanismId {
  MechanismName name = MechanismName::Greedy;
  std::optional<Rational> beta;

  static MechanismId parse(std::string_view token);
  static std::vector<MechanismId> parse_list(std::string_view comma_separated);

  std::string str() const;
  std::string base_name() const;
  bool needs_unit_density() const;
  bool randomized() const;
  /// Declared worst-case ratio of expected packed value to the optimum.
  Rational ratio_floor(int agent_count) const;

  bool operator==(const MechanismId& other) const = default;
};

/// The default FitTwo threshold: the ratio of consecutive Fibonacci numbers
/// F(16)/F(17) = 987/1597.
Rational default_fit_two_beta();

namespace mech {

/// Packs the fully fitting prefix of the canonical order, ignoring ownership.
/// Manipulable; kept as the audit foil.
OutcomeDistribution naive_greedy(const Instance& instance);

/// Gives every agent a size budget equal to their share of the relaxed
/// packing, then lets each agent pack their own items optimally within it.
OutcomeDistribution greedy(const Instance& instance);

/// If one agent holds at least two thirds of the relaxed packing's value,
/// that agent alone packs at full capacity; otherwise same as greedy.
OutcomeDistribution single_greedy(const Instance& instance);

/// The best single-agent optimum, ties to the lowest agent index.
OutcomeDistribution best_individual(const Instance& instance);

/// Fair coin between greedy and the single most valuable item.
OutcomeDistribution randomized_greedy(const Instance& instance);

}  // namespace mech

/// Dispatch by id; validates applicability (density class, beta range).
OutcomeDistribution run_mechanism(const MechanismId& id, const Instance& instance);

}  // namespace mechlab
