#include "mechlab/opt.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>
#include <vector>

namespace mechlab {

namespace {

constexpr std::size_t kDefaultGuard = 25;
constexpr std::size_t kWalkLimit = 13;  // below this, plain subset walking wins

const Rational& metric_of(const Item& item, BudgetMetric metric) {
  return metric == BudgetMetric::Size ? item.size : item.value;
}

/// True when sorted-id-set(a) precedes sorted-id-set(b) lexicographically.
/// Bit positions follow ascending item id, so the mask holding the lowest
/// differing bit comes first.
bool lex_mask_before(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) {
    return false;
  }
  return (a >> std::countr_zero(diff)) & 1u;
}

Outcome mask_to_outcome(const Instance& instance, std::span<const Item* const> items,
                        std::uint64_t mask) {
  std::vector<int> ids;
  while (mask != 0) {
    const int bit = std::countr_zero(mask);
    ids.push_back(items[static_cast<std::size_t>(bit)]->id);
    mask &= mask - 1;
  }
  return make_outcome(instance, std::move(ids));
}

struct SearchState {
  const Instance& instance;
  std::span<const Item* const> items;
  const Rational& budget;
  BudgetMetric metric;
  std::vector<std::size_t> relax_order;  // positions, best metric-density first
  Rational best_value;
  std::uint64_t best_mask = 0;
  Rational running_value;
  Rational running_weight;
  std::uint64_t running_mask = 0;

  /// Relaxation bound over the undecided positions (>= pos).
  Rational bound(std::size_t pos) const {
    Rational total = running_value;
    Rational room = budget - running_weight;
    for (std::size_t idx : relax_order) {
      if (room <= 0) {
        break;
      }
      if (idx < pos) {
        continue;
      }
      const Item& item = *items[idx];
      const Rational& weight = metric_of(item, metric);
      if (weight <= room) {
        total += item.value;
        room -= weight;
      } else {
        total += item.value * room / weight;
        room = 0;
        break;
      }
    }
    return total;
  }

  void dive(std::size_t pos) {
    if (pos == items.size()) {
      if (running_value > best_value) {
        best_value = running_value;
        best_mask = running_mask;
      }
      return;
    }
    if (bound(pos) <= best_value) {
      return;
    }
    const Item& item = *items[pos];
    const Rational& weight = metric_of(item, metric);
    if (running_weight + weight <= budget) {
      running_weight += weight;
      running_value += item.value;
      running_mask |= std::uint64_t(1) << pos;
      dive(pos + 1);
      running_mask &= ~(std::uint64_t(1) << pos);
      running_value -= item.value;
      running_weight -= weight;
    }
    dive(pos + 1);
  }
};

}  // namespace

std::size_t exact_search_guard() {
  const char* raw = std::getenv("MECHLAB_MAX_ITEMS");
  if (raw == nullptr || *raw == '\0') {
    return kDefaultGuard;
  }
  char* end = nullptr;
  const long parsed = std::strtol(raw, &end, 10);
  if (end == nullptr || *end != '\0' || parsed < 1) {
    throw InputError(std::string("MECHLAB_MAX_ITEMS must be a positive integer, got '") + raw +
                     "'");
  }
  return static_cast<std::size_t>(parsed);
}

namespace detail {

Outcome subset_walk(const Instance& instance, std::span<const Item* const> items,
                    const Rational& budget, BudgetMetric metric) {
  const std::size_t count = items.size();
  Rational best_value = 0;
  std::uint64_t best_mask = 0;
  Rational value = 0;
  Rational weight = 0;
  const std::uint64_t total = std::uint64_t(1) << count;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k);
    const std::uint64_t flipped = std::uint64_t(1) << bit;
    gray ^= flipped;
    const Item& item = *items[static_cast<std::size_t>(bit)];
    if (gray & flipped) {
      value += item.value;
      weight += metric_of(item, metric);
    } else {
      value -= item.value;
      weight -= metric_of(item, metric);
    }
    if (weight > budget) {
      continue;
    }
    if (value > best_value ||
        (value == best_value && lex_mask_before(gray, best_mask))) {
      best_value = value;
      best_mask = gray;
    }
  }
  return mask_to_outcome(instance, items, best_mask);
}

Outcome branch_and_bound(const Instance& instance, std::span<const Item* const> items,
                         const Rational& budget, BudgetMetric metric) {
  std::vector<Rational> relax_density(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    relax_density[i] = items[i]->value / metric_of(*items[i], metric);
  }
  SearchState state{instance, items, budget, metric, {}, 0, 0, 0, 0, 0};
  state.relax_order.resize(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    state.relax_order[i] = i;
  }
  std::sort(state.relax_order.begin(), state.relax_order.end(),
            [&](std::size_t a, std::size_t b) {
              if (relax_density[a] != relax_density[b]) {
                return relax_density[a] > relax_density[b];
              }
              if (items[a]->value != items[b]->value) {
                return items[a]->value > items[b]->value;
              }
              return items[a]->id < items[b]->id;
            });
  state.dive(0);
  return mask_to_outcome(instance, items, state.best_mask);
}

}  // namespace detail

Outcome max_value_subset(const Instance& instance, std::span<const Item* const> items,
                         const Rational& budget, BudgetMetric metric, std::size_t guard) {
  if (items.size() > guard) {
    throw SizeGuardError("exact search over " + std::to_string(items.size()) +
                         " items exceeds the guard of " + std::to_string(guard) +
                         " (set MECHLAB_MAX_ITEMS to raise it)");
  }
  if (items.size() > 63) {
    throw SizeGuardError("exact search supports at most 63 items");
  }
  if (budget <= 0 || items.empty()) {
    return empty_outcome();
  }
  std::vector<const Item*> sorted(items.begin(), items.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Item* a, const Item* b) { return a->id < b->id; });
  if (sorted.size() <= kWalkLimit) {
    return detail::subset_walk(instance, sorted, budget, metric);
  }
  return detail::branch_and_bound(instance, sorted, budget, metric);
}

Outcome solve_opt(const Instance& instance, std::size_t guard) {
  const std::vector<const Item*> items = instance.all_items();
  return max_value_subset(instance, items, instance.capacity(), BudgetMetric::Size, guard);
}

Outcome solve_agent_opt(const Instance& instance, int agent, std::size_t guard) {
  const std::vector<const Item*> items = instance.agent_items(agent);
  return max_value_subset(instance, items, instance.capacity(), BudgetMetric::Size, guard);
}

}  // namespace mechlab
