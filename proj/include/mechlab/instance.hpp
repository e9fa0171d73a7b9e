#pragma once

#include "mechlab/errors.hpp"
#include "mechlab/rational.hpp"

#include <span>
#include <vector>

namespace mechlab {

struct Item {
  int id = 0;
  int owner = 0;
  Rational value;
  Rational size;
  Rational density;  // value / size, cached at construction

  Item(int id, int owner, Rational value, Rational size);

  bool operator==(const Item& other) const {
    return id == other.id && owner == other.owner && value == other.value && size == other.size;
  }
};

/// A set of agent-owned items together with the knapsack capacity and the
/// agent universe. Immutable once built; items are kept sorted by id. Item
/// ids stay stable across sub-instance derivation, so an item keeps its
/// identity when other items are withheld.
class Instance {
 public:
  Instance(Rational capacity, int agent_count, std::vector<Item> items);

  /// Builds without schema validation. For internal derivation of
  /// sub-instances from already validated ones.
  static Instance trusted(Rational capacity, int agent_count, std::vector<Item> items);

  const Rational& capacity() const { return capacity_; }
  int agent_count() const { return agent_count_; }
  const std::vector<Item>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  /// True when every item has value == size.
  bool unit_density() const { return unit_density_; }
  /// True when two items share a value or two items share a size. Audits flag
  /// findings on such instances separately.
  bool has_ties() const { return has_ties_; }

  const Item* find(int id) const;
  const Item& at(int id) const;

  std::vector<const Item*> agent_items(int agent) const;
  std::vector<int> agent_item_ids(int agent) const;
  std::vector<const Item*> all_items() const;

  Rational total_value() const;
  Rational total_size() const;

  /// Copy with the given item ids removed; capacity and agent universe kept.
  Instance without(std::span<const int> ids) const;
  /// Copy keeping only the given item ids; capacity and agent universe kept.
  Instance restricted_to(std::span<const int> ids) const;

  bool operator==(const Instance& other) const {
    return capacity_ == other.capacity_ && agent_count_ == other.agent_count_ &&
           items_ == other.items_;
  }

 private:
  Instance() = default;
  void finalize();
  void validate() const;

  Rational capacity_;
  int agent_count_ = 1;
  std::vector<Item> items_;
  bool unit_density_ = true;
  bool has_ties_ = false;
};

/// A packed item set with its cached totals.
struct Outcome {
  std::vector<int> packed;  // sorted ids
  Rational value;
  Rational size;

  bool operator==(const Outcome& other) const = default;
};

Outcome make_outcome(const Instance& instance, std::vector<int> ids);
Outcome empty_outcome();

/// Total value of the packed items owned by one agent.
Rational agent_outcome_value(const Instance& instance, const Outcome& outcome, int agent);

}  // namespace mechlab
