#pragma once

#include "mechlab/instance.hpp"

#include <optional>

namespace mechlab {

/// Strict total order on items: density desc, value desc, id asc. Every
/// comparison between items routes through this order (or through
/// value_before below), so tied inputs behave as if values and sizes were
/// perturbed by a consistent, vanishing amount.
bool canonical_before(const Item& a, const Item& b);

/// The same convention restricted to values: value desc, id asc. Coincides
/// with canonical_before on unit-density instances.
bool value_before(const Item& a, const Item& b);

/// Item ids sorted by canonical_before.
std::vector<int> canonical_order(const Instance& instance);

/// The relaxed packing: items in canonical order receive share 1 while the
/// prefix fits, the next item the remaining fraction of the capacity, items
/// after that share 0.
struct FractionalGreedySolution {
  std::vector<int> order;           // ids in packing order
  std::size_t full_count = 0;       // length of the fully packed prefix
  std::vector<Rational> fractions;  // aligned with order
  std::optional<int> split_item;    // the id with a share strictly between 0 and 1

  const Rational& fraction_of(int id) const;

  Rational packed_size(const Instance& instance) const;
  Rational packed_value(const Instance& instance) const;
  Rational agent_packed_size(const Instance& instance, int agent) const;
  Rational agent_packed_value(const Instance& instance, int agent) const;
};

FractionalGreedySolution fractional_greedy(const Instance& instance);

/// The fully packed prefix of the relaxed packing.
Outcome integral_greedy(const Instance& instance);

}  // namespace mechlab
