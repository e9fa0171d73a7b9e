#include "mechlab/greedy.hpp"

#include <algorithm>
#include <string>

namespace mechlab {

bool canonical_before(const Item& a, const Item& b) {
  if (a.density != b.density) {
    return a.density > b.density;
  }
  if (a.value != b.value) {
    return a.value > b.value;
  }
  return a.id < b.id;
}

bool value_before(const Item& a, const Item& b) {
  if (a.value != b.value) {
    return a.value > b.value;
  }
  return a.id < b.id;
}

std::vector<int> canonical_order(const Instance& instance) {
  std::vector<const Item*> items = instance.all_items();
  std::sort(items.begin(), items.end(),
            [](const Item* a, const Item* b) { return canonical_before(*a, *b); });
  std::vector<int> out;
  out.reserve(items.size());
  for (const Item* item : items) {
    out.push_back(item->id);
  }
  return out;
}

const Rational& FractionalGreedySolution::fraction_of(int id) const {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == id) {
      return fractions[i];
    }
  }
  throw Error("no fraction recorded for item id " + std::to_string(id));
}

Rational FractionalGreedySolution::packed_size(const Instance& instance) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sum += instance.at(order[i]).size * fractions[i];
  }
  return sum;
}

Rational FractionalGreedySolution::packed_value(const Instance& instance) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sum += instance.at(order[i]).value * fractions[i];
  }
  return sum;
}

Rational FractionalGreedySolution::agent_packed_size(const Instance& instance, int agent) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Item& item = instance.at(order[i]);
    if (item.owner == agent) {
      sum += item.size * fractions[i];
    }
  }
  return sum;
}

Rational FractionalGreedySolution::agent_packed_value(const Instance& instance, int agent) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Item& item = instance.at(order[i]);
    if (item.owner == agent) {
      sum += item.value * fractions[i];
    }
  }
  return sum;
}

FractionalGreedySolution fractional_greedy(const Instance& instance) {
  FractionalGreedySolution out;
  out.order = canonical_order(instance);
  out.fractions.assign(out.order.size(), Rational(0));

  Rational used = 0;
  std::size_t position = 0;
  while (position < out.order.size()) {
    const Item& item = instance.at(out.order[position]);
    if (used + item.size > instance.capacity()) {
      break;
    }
    used += item.size;
    out.fractions[position] = 1;
    ++position;
  }
  out.full_count = position;
  if (position < out.order.size()) {
    const Item& item = instance.at(out.order[position]);
    const Rational share = (instance.capacity() - used) / item.size;
    out.fractions[position] = share;
    if (share > 0 && share < 1) {
      out.split_item = item.id;
    }
  }
  return out;
}

Outcome integral_greedy(const Instance& instance) {
  const FractionalGreedySolution relaxed = fractional_greedy(instance);
  std::vector<int> packed(relaxed.order.begin(),
                          relaxed.order.begin() + static_cast<long>(relaxed.full_count));
  return make_outcome(instance, std::move(packed));
}

}  // namespace mechlab
