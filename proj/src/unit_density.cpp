#include "mechlab/unit_density.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace mechlab {

namespace {

void require_unit_density(const Instance& instance, const char* what) {
  if (!instance.unit_density()) {
    throw ApplicabilityError(std::string(what) +
                             " requires a unit-density instance (value == size per item)");
  }
}

OutcomeDistribution single_branch(Outcome outcome, std::string label) {
  OutcomeDistribution out;
  out.branches.push_back(OutcomeBranch{Rational(1), std::move(outcome), std::move(label)});
  return out;
}

/// Best single-agent optimum; ties go to the lowest agent index.
std::pair<int, Outcome> best_agent_opt(const Instance& instance) {
  int best_agent = 0;
  Outcome best = empty_outcome();
  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    Outcome own = solve_agent_opt(instance, agent);
    if (own.value > best.value) {
      best = std::move(own);
      best_agent = agent;
    }
  }
  return {best_agent, std::move(best)};
}

}  // namespace

FitSets compute_fit_sets(const Instance& instance) {
  if (instance.empty()) {
    throw InputError("cannot derive fit sets from an empty instance");
  }
  require_unit_density(instance, "compute_fit_sets");
  FitSets out;
  const Item* anchor = nullptr;
  for (const Item& candidate : instance.items()) {
    bool pairable = true;
    for (const Item& other : instance.items()) {
      if (other.owner == candidate.owner || !value_before(candidate, other)) {
        continue;
      }
      if (candidate.value + other.value > instance.capacity()) {
        pairable = false;
        break;
      }
    }
    if (!pairable) {
      continue;
    }
    out.pairable.push_back(candidate.id);
    if (anchor == nullptr || value_before(candidate, *anchor)) {
      anchor = &candidate;
    }
  }
  out.anchor = anchor->id;
  out.anchor_owner = anchor->owner;
  for (const Item& item : instance.items()) {
    if (item.id == anchor->id || anchor->value + item.value <= instance.capacity()) {
      out.restricted.push_back(item.id);
    }
  }
  return out;
}

LargeFitSets compute_large_sets(const Instance& instance) {
  if (instance.empty()) {
    throw InputError("cannot derive large-fit sets from an empty instance");
  }
  require_unit_density(instance, "compute_large_sets");
  const Item* top = nullptr;
  for (const Item& item : instance.items()) {
    if (top == nullptr || value_before(item, *top)) {
      top = &item;
    }
  }
  LargeFitSets out;
  out.top_item = top->id;
  out.top_owner = top->owner;
  for (const Item& item : instance.items()) {
    if (item.owner == top->owner || top->value + item.value <= instance.capacity()) {
      out.restricted.push_back(item.id);
    }
  }
  return out;
}

Outcome restricted_greedy(const Instance& instance, std::span<const int> pool) {
  require_unit_density(instance, "restricted_greedy");
  const Instance sub = instance.restricted_to(pool);
  const FractionalGreedySolution relaxed = fractional_greedy(sub);
  std::vector<int> packed;
  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    const std::vector<const Item*> own = instance.agent_items(agent);
    if (own.empty()) {
      continue;
    }
    const Rational quota = relaxed.agent_packed_value(sub, agent);
    const Outcome mine = max_value_subset(instance, own, quota, BudgetMetric::Value);
    packed.insert(packed.end(), mine.packed.begin(), mine.packed.end());
  }
  return make_outcome(instance, std::move(packed));
}

bool agent_dominates(const Instance& stronger, const Instance& weaker, int agent) {
  if (stronger.capacity() != weaker.capacity() ||
      stronger.agent_count() != weaker.agent_count()) {
    throw InputError("dominance comparison needs matching capacity and agent universe");
  }
  if (agent < 0 || agent >= stronger.agent_count()) {
    throw InputError("dominance agent index out of range");
  }
  std::vector<Rational> mine_strong, mine_weak, rest_strong, rest_weak;
  for (const Item& item : stronger.items()) {
    (item.owner == agent ? mine_strong : rest_strong).push_back(item.value);
  }
  for (const Item& item : weaker.items()) {
    (item.owner == agent ? mine_weak : rest_weak).push_back(item.value);
  }
  if (mine_strong.size() < mine_weak.size() || rest_strong.size() > rest_weak.size()) {
    return false;
  }
  auto desc = [](std::vector<Rational>& values) {
    std::sort(values.begin(), values.end(), std::greater<Rational>());
  };
  desc(mine_strong);
  desc(mine_weak);
  desc(rest_strong);
  desc(rest_weak);
  for (std::size_t k = 0; k < mine_weak.size(); ++k) {
    if (mine_strong[k] < mine_weak[k]) {
      return false;
    }
  }
  for (std::size_t k = 0; k < rest_strong.size(); ++k) {
    if (rest_strong[k] > rest_weak[k]) {
      return false;
    }
  }
  return true;
}

namespace mech {

OutcomeDistribution fit_two(const Instance& instance, const Rational& beta) {
  if (beta < Rational(1, 2) || beta > Rational(2, 3)) {
    throw ApplicabilityError("fit_two threshold must lie in [1/2, 2/3], got " +
                             format_rational(beta));
  }
  require_unit_density(instance, "fit_two");
  if (instance.empty()) {
    return single_branch(empty_outcome(), "fit_two");
  }
  auto [agent, best] = best_agent_opt(instance);
  (void)agent;
  if (best.value >= beta * instance.capacity()) {
    return single_branch(std::move(best), "fit_two");
  }
  const FitSets sets = compute_fit_sets(instance);
  return single_branch(restricted_greedy(instance, sets.restricted), "fit_two");
}

OutcomeDistribution large_fit(const Instance& instance) {
  require_unit_density(instance, "large_fit");
  if (instance.empty()) {
    return single_branch(empty_outcome(), "large_fit");
  }
  auto [agent, best] = best_agent_opt(instance);
  (void)agent;
  if (3 * best.value >= 2 * instance.capacity()) {
    return single_branch(std::move(best), "large_fit");
  }
  const LargeFitSets sets = compute_large_sets(instance);
  return single_branch(restricted_greedy(instance, sets.restricted), "large_fit");
}

OutcomeDistribution randomized_fit(const Instance& instance) {
  require_unit_density(instance, "randomized_fit");
  OutcomeDistribution out;
  OutcomeDistribution pair_arm = fit_two(instance, Rational(2, 3));
  out.branches.push_back(
      OutcomeBranch{Rational(2, 3), std::move(pair_arm.branches.front().outcome), "fit-arm"});
  OutcomeDistribution large_arm = large_fit(instance);
  out.branches.push_back(
      OutcomeBranch{Rational(1, 3), std::move(large_arm.branches.front().outcome), "large-arm"});
  return out;
}

}  // namespace mech

}  // namespace mechlab
