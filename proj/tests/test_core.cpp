#include "doctest.h"

#include "mechlab/catalog.hpp"
#include "mechlab/generators.hpp"
#include "mechlab/greedy.hpp"
#include "mechlab/opt.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

using namespace mechlab;

namespace {

Instance make(Rational capacity, int agents, std::vector<Item> items) {
  return Instance(std::move(capacity), agents, std::move(items));
}

// Plain full enumeration, independent of the production solver: walks every
// subset as an id vector, keeps the highest value, and among value ties the
// lexicographically smallest sorted id list.
Outcome oracle_best(const Instance& instance, const std::vector<const Item*>& pool,
                    const Rational& budget, BudgetMetric metric) {
  std::vector<const Item*> sorted(pool);
  std::sort(sorted.begin(), sorted.end(),
            [](const Item* a, const Item* b) { return a->id < b->id; });
  REQUIRE(sorted.size() <= 20);
  std::vector<int> best_ids;
  Rational best_value = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << sorted.size()); ++mask) {
    Rational weight = 0;
    Rational value = 0;
    std::vector<int> ids;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (mask & (std::uint64_t(1) << i)) {
        weight += metric == BudgetMetric::Size ? sorted[i]->size : sorted[i]->value;
        value += sorted[i]->value;
        ids.push_back(sorted[i]->id);
      }
    }
    if (weight > budget) {
      continue;
    }
    if (value > best_value || (value == best_value && ids < best_ids)) {
      best_value = std::move(value);
      best_ids = std::move(ids);
    }
  }
  return make_outcome(instance, best_ids);
}

Outcome oracle_opt(const Instance& instance) {
  return oracle_best(instance, instance.all_items(), instance.capacity(), BudgetMetric::Size);
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("10") == Rational(10));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("2/3") == Rational(2, 3));
  CHECK(parse_rational("-2/3") == Rational(-2, 3));
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK(parse_rational("987/1597") == Rational(987, 1597));

  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("1.5"), InputError);
  CHECK_THROWS_AS(parse_rational("a/b"), InputError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), InputError);
  CHECK_THROWS_AS(parse_rational("2 /3"), InputError);

  CHECK(format_rational(Rational(10)) == "10");
  CHECK(format_rational(Rational(2, 3)) == "2/3");
  CHECK(format_rational(Rational(-2, 3)) == "-2/3");
  CHECK(format_rational(Rational(6, 3)) == "2");
  CHECK(format_rational(parse_rational("69/70")) == "69/70");

  CHECK(floor_to_int(Rational(7, 2)) == 3);
  CHECK(floor_to_int(Rational(-7, 2)) == -4);
  CHECK(floor_to_int(Rational(4)) == 4);
  CHECK(approx_double(Rational(1, 2)) == doctest::Approx(0.5));
}

TEST_CASE("canonical order sorts by density, then value, then id") {
  const Instance reference = catalog_instance("figure1");
  CHECK(canonical_order(reference) == std::vector<int>{0, 1, 2, 3, 4, 5, 6});

  SUBCASE("scrambled ids change only the id tie-break") {
    // Same multiset of (value, size) pairs, ids permuted.
    const Instance scrambled = make(
        10, 3,
        {Item(6, 0, 10, 1), Item(5, 1, 25, 3), Item(4, 2, 20, 3), Item(3, 0, 6, 1),
         Item(2, 2, 15, 3), Item(1, 2, 8, 2), Item(0, 1, 5, 5)});
    CHECK(canonical_order(scrambled) == std::vector<int>{6, 5, 4, 3, 2, 1, 0});
  }

  SUBCASE("density ties fall back to larger value") {
    // Same density 2: (4,2) before (2,1).
    const Instance tied = make(10, 1, {Item(0, 0, 2, 1), Item(1, 0, 4, 2)});
    CHECK(canonical_order(tied) == std::vector<int>{1, 0});
  }

  SUBCASE("identical items fall back to lower id") {
    const Instance twins = make(10, 1, {Item(1, 0, 3, 2), Item(0, 0, 3, 2)});
    CHECK(canonical_order(twins) == std::vector<int>{0, 1});
    CHECK(canonical_before(twins.at(0), twins.at(1)));
    CHECK_FALSE(canonical_before(twins.at(1), twins.at(0)));
  }

  SUBCASE("value order ignores sizes") {
    const Instance inst = make(10, 1, {Item(0, 0, 3, 1), Item(1, 0, 5, 5)});
    CHECK(value_before(inst.at(1), inst.at(0)));
    CHECK(canonical_before(inst.at(0), inst.at(1)));
  }
}

TEST_CASE("relaxed packing on the reference instance") {
  const Instance reference = catalog_instance("figure1");
  const FractionalGreedySolution frac = fractional_greedy(reference);
  CHECK(frac.order == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(frac.full_count == 4);
  REQUIRE(frac.split_item.has_value());
  CHECK(*frac.split_item == 4);
  CHECK(frac.fraction_of(0) == 1);
  CHECK(frac.fraction_of(3) == 1);
  CHECK(frac.fraction_of(4) == Rational(2, 3));
  CHECK(frac.fraction_of(5) == 0);
  CHECK(frac.fraction_of(6) == 0);
  CHECK_THROWS_AS(frac.fraction_of(99), Error);
  CHECK(frac.packed_value(reference) == 71);
  CHECK(frac.packed_size(reference) == 10);
  CHECK(frac.agent_packed_value(reference, 0) == 16);
  CHECK(frac.agent_packed_value(reference, 1) == 25);
  CHECK(frac.agent_packed_value(reference, 2) == 30);
  CHECK(frac.agent_packed_size(reference, 0) == 2);
  CHECK(frac.agent_packed_size(reference, 1) == 3);
  CHECK(frac.agent_packed_size(reference, 2) == 5);

  const Outcome integral = integral_greedy(reference);
  CHECK(integral.packed == std::vector<int>{0, 1, 2, 3});
  CHECK(integral.value == 61);

  SUBCASE("everything fits when capacity covers the total size") {
    const Instance roomy = make(100, 1, {Item(0, 0, 3, 2), Item(1, 0, 5, 4)});
    const FractionalGreedySolution all = fractional_greedy(roomy);
    CHECK(all.full_count == 2);
    CHECK_FALSE(all.split_item.has_value());
    CHECK(all.packed_size(roomy) == 6);
  }

  SUBCASE("empty instance") {
    const Instance empty = make(5, 1, {});
    const FractionalGreedySolution none = fractional_greedy(empty);
    CHECK(none.order.empty());
    CHECK(none.full_count == 0);
    CHECK(none.packed_value(empty) == 0);
    CHECK(integral_greedy(empty).value == 0);
  }

  SUBCASE("exact fit leaves no split item") {
    const Instance snug = make(6, 1, {Item(0, 0, 8, 4), Item(1, 0, 3, 2)});
    const FractionalGreedySolution fit = fractional_greedy(snug);
    CHECK(fit.full_count == 2);
    CHECK_FALSE(fit.split_item.has_value());
  }
}

TEST_CASE("relaxed packing properties on random instances") {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::GeneralRandom;
  spec.max_denominator = 8;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    spec.seed = seed;
    for (std::uint64_t index = 0; index < 120; ++index) {
      const Instance instance = generate(spec, index);
      const FractionalGreedySolution frac = fractional_greedy(instance);

      // The relaxed packing always uses min(capacity, total size) exactly.
      CHECK(frac.packed_size(instance) ==
            std::min(instance.capacity(), instance.total_size()));

      // Shares are within [0, 1], fully 1 on the prefix, 0 past the split.
      bool seen_partial = false;
      for (std::size_t i = 0; i < frac.order.size(); ++i) {
        const Rational& share = frac.fractions[i];
        CHECK(share >= 0);
        CHECK(share <= 1);
        if (i < frac.full_count) {
          CHECK(share == 1);
        } else if (seen_partial) {
          CHECK(share == 0);
        }
        if (share > 0 && share < 1) {
          seen_partial = true;
        }
      }

      // The relaxation dominates the exact optimum.
      CHECK(frac.packed_value(instance) >= solve_opt(instance).value);

      // Withholding an item never raises the relaxed value.
      for (const Item& item : instance.items()) {
        const int removed[] = {item.id};
        const Instance sub = instance.without(removed);
        CHECK(fractional_greedy(sub).packed_value(sub) <= frac.packed_value(instance));
      }
    }
  }
}

TEST_CASE("exact optimum on reference instances") {
  const Instance reference = catalog_instance("figure1");
  const Outcome opt = solve_opt(reference);
  CHECK(opt.packed == std::vector<int>{0, 1, 2, 4});
  CHECK(opt.value == 70);
  CHECK(opt.size == 10);

  const Instance funding = catalog_instance("intro_funding");
  const Outcome funding_opt = solve_opt(funding);
  CHECK(funding_opt.value == 1);
  CHECK(funding_opt.packed == std::vector<int>{0, 2});

  SUBCASE("per-agent optimum") {
    CHECK(solve_agent_opt(reference, 0).value == 16);
    const Outcome second = solve_agent_opt(reference, 1);
    CHECK(second.value == 30);
    CHECK(second.packed == std::vector<int>{1, 6});
    const Outcome orange = solve_agent_opt(reference, 2);
    CHECK(orange.value == 43);
    CHECK(orange.packed == std::vector<int>{2, 4, 5});
  }

  SUBCASE("constrained budgets") {
    const std::vector<const Item*> pool = reference.agent_items(2);
    const Outcome tight = max_value_subset(reference, pool, 5, BudgetMetric::Size);
    CHECK(tight.packed == std::vector<int>{2, 5});
    CHECK(tight.value == 28);
    CHECK(max_value_subset(reference, pool, 0, BudgetMetric::Size).packed.empty());
    CHECK(max_value_subset(reference, pool, -1, BudgetMetric::Size).packed.empty());
  }

  SUBCASE("value-metric budget") {
    const Instance ud = make(10, 1, {Item(0, 0, 5, 5), Item(1, 0, 1, 1)});
    const Outcome capped = max_value_subset(ud, ud.all_items(), 5, BudgetMetric::Value);
    CHECK(capped.packed == std::vector<int>{0});
    CHECK(capped.value == 5);
    const Outcome both = max_value_subset(ud, ud.all_items(), 6, BudgetMetric::Value);
    CHECK(both.packed == std::vector<int>{0, 1});
  }

  SUBCASE("value ties resolve to the lexicographically smallest id set") {
    // {0} and {1} both reach value 5; {0} wins.
    const Instance tied = make(4, 1, {Item(0, 0, 5, 4), Item(1, 0, 5, 4)});
    CHECK(solve_opt(tied).packed == std::vector<int>{0});
    // {0,2} and {1} both reach value 5; [0,2] < [1].
    const Instance paired =
        make(8, 1, {Item(0, 0, 3, 4), Item(1, 0, 5, 8), Item(2, 0, 2, 4)});
    CHECK(solve_opt(paired).packed == std::vector<int>{0, 2});
  }
}

TEST_CASE("exact optimum matches plain enumeration") {
  GeneratorSpec spec;
  spec.max_denominator = 6;

  SUBCASE("subset-walk range") {
    spec.kind = GeneratorKind::GeneralRandom;
    spec.min_items = 1;
    spec.max_items = 7;
    spec.seed = 41;
    for (std::uint64_t index = 0; index < 150; ++index) {
      const Instance instance = generate(spec, index);
      const Outcome mine = solve_opt(instance);
      const Outcome theirs = oracle_opt(instance);
      CHECK(mine.value == theirs.value);
      CHECK(mine.packed == theirs.packed);
    }
  }

  SUBCASE("branch-and-bound range") {
    spec.kind = GeneratorKind::GeneralRandom;
    spec.min_items = 14;
    spec.max_items = 15;
    spec.max_denominator = 1;
    spec.seed = 42;
    spec.capacity_rule = {CapacityRule::Kind::FractionOfTotalSize, Rational(1, 2)};
    for (std::uint64_t index = 0; index < 12; ++index) {
      const Instance instance = generate(spec, index);
      const Outcome mine = solve_opt(instance);
      const Outcome theirs = oracle_opt(instance);
      CHECK(mine.value == theirs.value);
      CHECK(mine.packed == theirs.packed);
    }
  }

  SUBCASE("tie-heavy inputs, both solver paths") {
    spec.kind = GeneratorKind::TieHeavy;
    spec.tie_pool = 2;
    for (const auto [items, rounds] : {std::pair(6, 40), std::pair(14, 12)}) {
      spec.min_items = items;
      spec.max_items = items;
      spec.seed = 43;
      for (std::uint64_t index = 0; index < static_cast<std::uint64_t>(rounds); ++index) {
        const Instance instance = generate(spec, index);
        const Outcome mine = solve_opt(instance);
        const Outcome theirs = oracle_opt(instance);
        CHECK(mine.value == theirs.value);
        CHECK(mine.packed == theirs.packed);
      }
    }
  }

  SUBCASE("constrained budgets, both metrics") {
    spec.kind = GeneratorKind::GeneralRandom;
    spec.min_items = 4;
    spec.max_items = 7;
    spec.min_agents = 2;
    spec.max_agents = 2;
    spec.seed = 44;
    for (std::uint64_t index = 0; index < 80; ++index) {
      const Instance instance = generate(spec, index);
      const std::vector<const Item*> pool = instance.agent_items(0);
      if (pool.empty()) {
        continue;
      }
      for (const BudgetMetric metric : {BudgetMetric::Size, BudgetMetric::Value}) {
        const Rational budget = instance.capacity() / 2;
        const Outcome mine = max_value_subset(instance, pool, budget, metric);
        const Outcome theirs = oracle_best(instance, pool, budget, metric);
        CHECK(mine.value == theirs.value);
        CHECK(mine.packed == theirs.packed);
      }
    }
  }
}

TEST_CASE("search guard and its environment override") {
  std::vector<Item> many;
  for (int i = 0; i < 26; ++i) {
    many.emplace_back(i, 0, 1 + (i % 5), 1 + (i % 3));
  }
  const Instance big = make(1000, 1, many);

  CHECK(exact_search_guard() == 25);
  CHECK_THROWS_AS(solve_opt(big), SizeGuardError);

  setenv("MECHLAB_MAX_ITEMS", "30", 1);
  CHECK(exact_search_guard() == 30);
  // Capacity covers everything, so the search closes immediately.
  CHECK(solve_opt(big).packed.size() == 26);

  setenv("MECHLAB_MAX_ITEMS", "junk", 1);
  CHECK_THROWS_AS(exact_search_guard(), InputError);
  CHECK_THROWS_AS(solve_opt(big), InputError);

  unsetenv("MECHLAB_MAX_ITEMS");
  CHECK(exact_search_guard() == 25);
}
