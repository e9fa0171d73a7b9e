#include "mechlab/instance.hpp"

#include "mechlab/rational.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace mechlab {

Item::Item(int id_in, int owner_in, Rational value_in, Rational size_in)
    : id(id_in), owner(owner_in), value(std::move(value_in)), size(std::move(size_in)) {
  if (size != 0) {
    density = value / size;
  }
}

Instance::Instance(Rational capacity, int agent_count, std::vector<Item> items) {
  capacity_ = std::move(capacity);
  agent_count_ = agent_count;
  items_ = std::move(items);
  validate();
  finalize();
}

Instance Instance::trusted(Rational capacity, int agent_count, std::vector<Item> items) {
  Instance out;
  out.capacity_ = std::move(capacity);
  out.agent_count_ = agent_count;
  out.items_ = std::move(items);
  out.finalize();
  return out;
}

void Instance::validate() const {
  if (capacity_ <= 0) {
    throw InputError("capacity must be positive, got " + format_rational(capacity_));
  }
  if (agent_count_ < 1) {
    throw InputError("agent count must be at least 1, got " + std::to_string(agent_count_));
  }
  std::set<int> seen;
  for (const Item& item : items_) {
    const std::string where = "item " + std::to_string(item.id);
    if (item.id < 0) {
      throw InputError(where + ": negative id");
    }
    if (!seen.insert(item.id).second) {
      throw InputError(where + ": duplicate id");
    }
    if (item.owner < 0 || item.owner >= agent_count_) {
      throw InputError(where + ": owner " + std::to_string(item.owner) + " outside [0, " +
                       std::to_string(agent_count_) + ")");
    }
    if (item.value <= 0) {
      throw InputError(where + ": value must be positive, got " + format_rational(item.value));
    }
    if (item.size <= 0) {
      throw InputError(where + ": size must be positive, got " + format_rational(item.size));
    }
    if (item.size > capacity_) {
      throw InputError(where + ": size " + format_rational(item.size) + " exceeds capacity " +
                       format_rational(capacity_));
    }
  }
}

void Instance::finalize() {
  std::sort(items_.begin(), items_.end(),
            [](const Item& a, const Item& b) { return a.id < b.id; });
  unit_density_ = true;
  for (const Item& item : items_) {
    if (item.value != item.size) {
      unit_density_ = false;
      break;
    }
  }
  has_ties_ = false;
  std::vector<Rational> values, sizes;
  values.reserve(items_.size());
  sizes.reserve(items_.size());
  for (const Item& item : items_) {
    values.push_back(item.value);
    sizes.push_back(item.size);
  }
  std::sort(values.begin(), values.end());
  std::sort(sizes.begin(), sizes.end());
  has_ties_ = std::adjacent_find(values.begin(), values.end()) != values.end() ||
              std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end();
}

const Item* Instance::find(int id) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), id,
                             [](const Item& item, int key) { return item.id < key; });
  if (it == items_.end() || it->id != id) {
    return nullptr;
  }
  return &*it;
}

const Item& Instance::at(int id) const {
  const Item* item = find(id);
  if (item == nullptr) {
    throw Error("no item with id " + std::to_string(id));
  }
  return *item;
}

std::vector<const Item*> Instance::agent_items(int agent) const {
  std::vector<const Item*> out;
  for (const Item& item : items_) {
    if (item.owner == agent) {
      out.push_back(&item);
    }
  }
  return out;
}

std::vector<int> Instance::agent_item_ids(int agent) const {
  std::vector<int> out;
  for (const Item& item : items_) {
    if (item.owner == agent) {
      out.push_back(item.id);
    }
  }
  return out;
}

std::vector<const Item*> Instance::all_items() const {
  std::vector<const Item*> out;
  out.reserve(items_.size());
  for (const Item& item : items_) {
    out.push_back(&item);
  }
  return out;
}

Rational Instance::total_value() const {
  Rational sum = 0;
  for (const Item& item : items_) {
    sum += item.value;
  }
  return sum;
}

Rational Instance::total_size() const {
  Rational sum = 0;
  for (const Item& item : items_) {
    sum += item.size;
  }
  return sum;
}

Instance Instance::without(std::span<const int> ids) const {
  std::vector<int> drop(ids.begin(), ids.end());
  std::sort(drop.begin(), drop.end());
  std::vector<Item> kept;
  kept.reserve(items_.size());
  for (const Item& item : items_) {
    if (!std::binary_search(drop.begin(), drop.end(), item.id)) {
      kept.push_back(item);
    }
  }
  return trusted(capacity_, agent_count_, std::move(kept));
}

Instance Instance::restricted_to(std::span<const int> ids) const {
  std::vector<int> keep(ids.begin(), ids.end());
  std::sort(keep.begin(), keep.end());
  std::vector<Item> kept;
  kept.reserve(keep.size());
  for (const Item& item : items_) {
    if (std::binary_search(keep.begin(), keep.end(), item.id)) {
      kept.push_back(item);
    }
  }
  return trusted(capacity_, agent_count_, std::move(kept));
}

Outcome make_outcome(const Instance& instance, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  Outcome out;
  out.value = 0;
  out.size = 0;
  out.packed = std::move(ids);
  for (int id : out.packed) {
    const Item& item = instance.at(id);
    out.value += item.value;
    out.size += item.size;
  }
  return out;
}

Outcome empty_outcome() {
  Outcome out;
  out.value = 0;
  out.size = 0;
  return out;
}

Rational agent_outcome_value(const Instance& instance, const Outcome& outcome, int agent) {
  Rational sum = 0;
  for (int id : outcome.packed) {
    const Item& item = instance.at(id);
    if (item.owner == agent) {
      sum += item.value;
    }
  }
  return sum;
}

}  // namespace mechlab
