#include "mechlab/mechanisms.hpp"

#include "mechlab/unit_density.hpp"

#include <algorithm>
#include <string>

namespace mechlab {

Rational OutcomeDistribution::expected_value() const {
  Rational sum = 0;
  for (const OutcomeBranch& branch : branches) {
    sum += branch.probability * branch.outcome.value;
  }
  return sum;
}

Rational OutcomeDistribution::expected_agent_value(const Instance& instance, int agent) const {
  Rational sum = 0;
  for (const OutcomeBranch& branch : branches) {
    sum += branch.probability * agent_outcome_value(instance, branch.outcome, agent);
  }
  return sum;
}

void OutcomeDistribution::check() const {
  if (branches.empty()) {
    throw Error("outcome distribution has no branches");
  }
  Rational total = 0;
  for (const OutcomeBranch& branch : branches) {
    if (branch.probability <= 0) {
      throw Error("branch '" + branch.label + "' has non-positive probability");
    }
    total += branch.probability;
  }
  if (total != 1) {
    throw Error("branch probabilities sum to " + format_rational(total) + ", expected 1");
  }
}

namespace {

const char* name_token(MechanismName name) {
  switch (name) {
    case MechanismName::NaiveGreedy:
      return "naive_greedy";
    case MechanismName::Greedy:
      return "greedy";
    case MechanismName::SingleGreedy:
      return "single_greedy";
    case MechanismName::BestIndividual:
      return "best_individual";
    case MechanismName::RandomizedGreedy:
      return "randomized_greedy";
    case MechanismName::FitTwo:
      return "fit_two";
    case MechanismName::LargeFit:
      return "large_fit";
    case MechanismName::RandomizedFit:
      return "randomized_fit";
  }
  return "?";
}

OutcomeDistribution single_branch(Outcome outcome, std::string label) {
  OutcomeDistribution out;
  out.branches.push_back(OutcomeBranch{Rational(1), std::move(outcome), std::move(label)});
  return out;
}

}  // namespace

Rational default_fit_two_beta() { return Rational(987, 1597); }

MechanismId MechanismId::parse(std::string_view token) {
  MechanismId out;
  std::string_view base = token;
  std::optional<Rational> beta;
  if (const std::size_t colon = token.find(':'); colon != std::string_view::npos) {
    base = token.substr(0, colon);
    beta = parse_rational(token.substr(colon + 1));
  }
  bool found = false;
  for (MechanismName name :
       {MechanismName::NaiveGreedy, MechanismName::Greedy, MechanismName::SingleGreedy,
        MechanismName::BestIndividual, MechanismName::RandomizedGreedy, MechanismName::FitTwo,
        MechanismName::LargeFit, MechanismName::RandomizedFit}) {
    if (base == name_token(name)) {
      out.name = name;
      found = true;
      break;
    }
  }
  if (!found) {
    throw InputError("unknown mechanism '" + std::string(base) + "'");
  }
  if (beta.has_value() && out.name != MechanismName::FitTwo) {
    throw InputError("mechanism '" + std::string(base) + "' takes no parameter");
  }
  if (out.name == MechanismName::FitTwo) {
    out.beta = beta.has_value() ? *beta : default_fit_two_beta();
  }
  return out;
}

std::vector<MechanismId> MechanismId::parse_list(std::string_view comma_separated) {
  std::vector<MechanismId> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    std::size_t end = comma_separated.find(',', start);
    if (end == std::string_view::npos) {
      end = comma_separated.size();
    }
    const std::string_view token = comma_separated.substr(start, end - start);
    out.push_back(parse(token));
    start = end + 1;
  }
  return out;
}

std::string MechanismId::str() const {
  std::string out = name_token(name);
  if (beta.has_value()) {
    out += ":";
    out += format_rational(*beta);
  }
  return out;
}

std::string MechanismId::base_name() const { return name_token(name); }

bool MechanismId::needs_unit_density() const {
  return name == MechanismName::FitTwo || name == MechanismName::LargeFit ||
         name == MechanismName::RandomizedFit;
}

bool MechanismId::randomized() const {
  return name == MechanismName::RandomizedGreedy || name == MechanismName::RandomizedFit;
}

Rational MechanismId::ratio_floor(int agent_count) const {
  switch (name) {
    case MechanismName::NaiveGreedy:
    case MechanismName::Greedy:
      return Rational(0);
    case MechanismName::SingleGreedy:
      return Rational(1, 3);
    case MechanismName::BestIndividual:
      return Rational(1, std::max(agent_count, 1));
    case MechanismName::RandomizedGreedy:
      return Rational(1, 2);
    case MechanismName::FitTwo: {
      const Rational b = beta.value_or(default_fit_two_beta());
      const Rational other = (1 - b) / b;
      return std::min(b, other);
    }
    case MechanismName::LargeFit:
      return Rational(1, 2);
    case MechanismName::RandomizedFit:
      return Rational(2, 3);
  }
  return Rational(0);
}

namespace mech {

OutcomeDistribution naive_greedy(const Instance& instance) {
  return single_branch(integral_greedy(instance), "naive_greedy");
}

OutcomeDistribution greedy(const Instance& instance) {
  const FractionalGreedySolution relaxed = fractional_greedy(instance);
  std::vector<int> packed;
  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    const std::vector<const Item*> own = instance.agent_items(agent);
    if (own.empty()) {
      continue;
    }
    const Rational quota = relaxed.agent_packed_size(instance, agent);
    const Outcome mine = max_value_subset(instance, own, quota, BudgetMetric::Size);
    packed.insert(packed.end(), mine.packed.begin(), mine.packed.end());
  }
  return single_branch(make_outcome(instance, std::move(packed)), "greedy");
}

OutcomeDistribution single_greedy(const Instance& instance) {
  const FractionalGreedySolution relaxed = fractional_greedy(instance);
  const Rational total = relaxed.packed_value(instance);
  if (total > 0) {
    for (int agent = 0; agent < instance.agent_count(); ++agent) {
      const Rational share = relaxed.agent_packed_value(instance, agent);
      if (3 * share >= 2 * total) {
        Outcome own = solve_agent_opt(instance, agent);
        return single_branch(std::move(own), "single_greedy");
      }
    }
  }
  OutcomeDistribution inner = greedy(instance);
  inner.branches.front().label = "single_greedy";
  return inner;
}

OutcomeDistribution best_individual(const Instance& instance) {
  Outcome best = empty_outcome();
  for (int agent = 0; agent < instance.agent_count(); ++agent) {
    Outcome own = solve_agent_opt(instance, agent);
    if (own.value > best.value) {
      best = std::move(own);
    }
  }
  return single_branch(std::move(best), "best_individual");
}

OutcomeDistribution randomized_greedy(const Instance& instance) {
  OutcomeDistribution out;
  OutcomeDistribution base = greedy(instance);
  out.branches.push_back(
      OutcomeBranch{Rational(1, 2), std::move(base.branches.front().outcome), "greedy-arm"});
  Outcome top = empty_outcome();
  const Item* top_item = nullptr;
  for (const Item& item : instance.items()) {
    if (top_item == nullptr || item.value > top_item->value ||
        (item.value == top_item->value && canonical_before(item, *top_item))) {
      top_item = &item;
    }
  }
  if (top_item != nullptr) {
    top = make_outcome(instance, {top_item->id});
  }
  out.branches.push_back(OutcomeBranch{Rational(1, 2), std::move(top), "top-item-arm"});
  return out;
}

}  // namespace mech

OutcomeDistribution run_mechanism(const MechanismId& id, const Instance& instance) {
  if (id.needs_unit_density() && !instance.unit_density()) {
    throw ApplicabilityError("mechanism " + id.str() +
                             " requires a unit-density instance (value == size per item)");
  }
  switch (id.name) {
    case MechanismName::NaiveGreedy:
      return mech::naive_greedy(instance);
    case MechanismName::Greedy:
      return mech::greedy(instance);
    case MechanismName::SingleGreedy:
      return mech::single_greedy(instance);
    case MechanismName::BestIndividual:
      return mech::best_individual(instance);
    case MechanismName::RandomizedGreedy:
      return mech::randomized_greedy(instance);
    case MechanismName::FitTwo:
      return mech::fit_two(instance, id.beta.value_or(default_fit_two_beta()));
    case MechanismName::LargeFit:
      return mech::large_fit(instance);
    case MechanismName::RandomizedFit:
      return mech::randomized_fit(instance);
  }
  throw Error("unhandled mechanism");
}

}  // namespace mechlab
