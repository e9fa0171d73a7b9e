#pragma once

#include "mechlab/mechanisms.hpp"

#include <span>

namespace mechlab {

/// Derived sets behind the pair-threshold mechanism: the items that fit
/// together with every lower-valued item of other agents, the most valuable
/// of those (the anchor), and the items that each fit alongside the anchor.
struct FitSets {
  std::vector<int> pairable;    // sorted ids
  int anchor = -1;
  int anchor_owner = -1;
  std::vector<int> restricted;  // sorted ids; always contains the anchor
};

FitSets compute_fit_sets(const Instance& instance);

/// Derived sets behind the large-item mechanism: the most valuable item
/// overall, its owner, and that owner's items plus everything that fits
/// alongside the top item.
struct LargeFitSets {
  int top_item = -1;
  int top_owner = -1;
  std::vector<int> restricted;  // sorted ids
};

LargeFitSets compute_large_sets(const Instance& instance);

/// Value-budget variant of the greedy quota mechanism: budgets come from the
/// relaxed packing of `pool` alone, but each agent then packs over their full
/// item set within their value budget.
Outcome restricted_greedy(const Instance& instance, std::span<const int> pool);

/// Position-wise value dominance from one agent's point of view: the agent
/// holds at least as many items, each position at least as valuable, while
/// the rest of the market holds at most as many, each position at most as
/// valuable.
bool agent_dominates(const Instance& stronger, const Instance& weaker, int agent);

namespace mech {

/// If some agent alone reaches beta * capacity, that agent packs alone;
/// otherwise runs the value-budget greedy on the pairable core. beta must lie
/// in [1/2, 2/3].
OutcomeDistribution fit_two(const Instance& instance, const Rational& beta);

/// If some agent alone reaches (2/3) * capacity, that agent packs alone;
/// otherwise runs the value-budget greedy on the top item's companion set.
OutcomeDistribution large_fit(const Instance& instance);

/// Lottery: fit_two at 2/3 with probability 2/3, large_fit with 1/3.
OutcomeDistribution randomized_fit(const Instance& instance);

}  // namespace mech

}  // namespace mechlab
