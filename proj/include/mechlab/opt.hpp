#pragma once

#include "mechlab/instance.hpp"

#include <span>

namespace mechlab {

/// Which per-item quantity a budget constrains.
enum class BudgetMetric { Size, Value };

/// Cap on exact-search item counts. Defaults to 25; the environment variable
/// MECHLAB_MAX_ITEMS overrides it.
std::size_t exact_search_guard();

/// Exact maximum-value subset of `items` whose metric total stays within
/// `budget`. Among equal-value optima returns the lexicographically smallest
/// sorted id set. Throws SizeGuardError past `guard` items.
Outcome max_value_subset(const Instance& instance, std::span<const Item* const> items,
                         const Rational& budget, BudgetMetric metric = BudgetMetric::Size,
                         std::size_t guard = exact_search_guard());

/// Optimal packing of the whole instance.
Outcome solve_opt(const Instance& instance, std::size_t guard = exact_search_guard());

/// Optimal packing of one agent's items alone, at full capacity.
Outcome solve_agent_opt(const Instance& instance, int agent,
                        std::size_t guard = exact_search_guard());

namespace detail {

/// Incremental subset walk; exact but exponential, used below a small size.
Outcome subset_walk(const Instance& instance, std::span<const Item* const> items,
                    const Rational& budget, BudgetMetric metric);

/// Depth-first search in id order with a relaxation bound; handles the larger
/// sizes up to the guard.
Outcome branch_and_bound(const Instance& instance, std::span<const Item* const> items,
                         const Rational& budget, BudgetMetric metric);

}  // namespace detail

}  // namespace mechlab
