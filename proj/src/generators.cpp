#include "mechlab/generators.hpp"

#include "mechlab/catalog.hpp"

#include <random>
#include <string>
#include <vector>

namespace mechlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic draws; the engine is seeded from (seed, index) so every
/// instance of a family is independent of the others.
struct Draw {
  std::mt19937_64 engine;

  Draw(std::uint64_t seed, std::uint64_t index)
      : engine(splitmix64(splitmix64(seed) ^ (0x9E3779B97F4A7C15ULL * (index + 1)))) {}

  std::uint64_t below(std::uint64_t bound) { return engine() % bound; }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Uniform-ish positive rational <= bound with denominator <= max_den.
  Rational positive_rational(const Rational& bound, unsigned max_den) {
    for (;;) {
      const std::uint64_t den = 1 + below(max_den);
      BigInt max_num = floor_to_int(bound * den);
      if (max_num < 1) {
        continue;  // denominator too coarse for the bound; redraw
      }
      if (max_num > 1000000) {
        max_num = 1000000;
      }
      const std::uint64_t num = 1 + below(max_num.convert_to<std::uint64_t>());
      return Rational(num, den);
    }
  }
};

constexpr int kMaxCapacityRetries = 5000;

Instance generate_random(const GeneratorSpec& spec, std::uint64_t index) {
  Draw draw(spec.seed, index);
  for (int attempt = 0; attempt < kMaxCapacityRetries; ++attempt) {
    const int item_count = draw.range(spec.min_items, spec.max_items);
    const int agent_count = draw.range(spec.min_agents, spec.max_agents);

    std::vector<Rational> value_pool, size_pool;
    if (spec.kind == GeneratorKind::TieHeavy) {
      const int pool = std::max(1, std::min(spec.tie_pool, item_count == 0 ? 1 : item_count));
      for (int i = 0; i < pool; ++i) {
        value_pool.push_back(draw.positive_rational(spec.max_value, spec.max_denominator));
        size_pool.push_back(draw.positive_rational(spec.max_size, spec.max_denominator));
      }
    }

    std::vector<Item> items;
    items.reserve(static_cast<std::size_t>(item_count));
    for (int i = 0; i < item_count; ++i) {
      const int owner = static_cast<int>(draw.below(static_cast<std::uint64_t>(agent_count)));
      Rational value, size;
      switch (spec.kind) {
        case GeneratorKind::GeneralRandom:
          value = draw.positive_rational(spec.max_value, spec.max_denominator);
          size = draw.positive_rational(spec.max_size, spec.max_denominator);
          break;
        case GeneratorKind::UnitDensityRandom:
          value = draw.positive_rational(spec.max_value, spec.max_denominator);
          size = value;
          break;
        case GeneratorKind::TieHeavy:
          value = value_pool[draw.below(value_pool.size())];
          size = size_pool[draw.below(size_pool.size())];
          break;
        default:
          throw Error("generate_random called for a non-random kind");
      }
      items.emplace_back(i, owner, std::move(value), std::move(size));
    }

    Rational capacity;
    if (spec.capacity_rule.kind == CapacityRule::Kind::Fixed) {
      capacity = spec.capacity_rule.amount;
      for (Item& item : items) {  // clamp so that no single item overflows
        if (item.size > capacity) {
          item = Item(item.id, item.owner,
                      item.value == item.size ? capacity : item.value, capacity);
        }
      }
    } else {
      Rational total = 0;
      for (const Item& item : items) {
        total += item.size;
      }
      capacity = spec.capacity_rule.amount * total;
      bool fits = capacity > 0;
      for (const Item& item : items) {
        if (item.size > capacity) {
          fits = false;
          break;
        }
      }
      if (!fits) {
        continue;  // redraw deterministically from the same stream
      }
    }
    return Instance(capacity, agent_count, std::move(items));
  }
  throw InputError("capacity rule rejected every draw; widen the item range or the fraction");
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::GeneralRandom:
      return "general-random";
    case GeneratorKind::UnitDensityRandom:
      return "unit-density-random";
    case GeneratorKind::TieHeavy:
      return "tie-heavy";
    case GeneratorKind::Named:
      return "named";
    case GeneratorKind::ProbeDet:
      return "probe-det";
    case GeneratorKind::ProbeRand:
      return "probe-rand";
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view token) {
  for (GeneratorKind kind :
       {GeneratorKind::GeneralRandom, GeneratorKind::UnitDensityRandom, GeneratorKind::TieHeavy,
        GeneratorKind::Named, GeneratorKind::ProbeDet, GeneratorKind::ProbeRand}) {
    if (token == to_string(kind)) {
      return kind;
    }
  }
  throw InputError("unknown generator kind '" + std::string(token) + "'");
}

void GeneratorSpec::validate() const {
  if (min_items < 0 || max_items < min_items) {
    throw InputError("generator item range is empty");
  }
  if (min_agents < 1 || max_agents < min_agents) {
    throw InputError("generator agent range is empty");
  }
  if (max_value <= 0 || max_size <= 0) {
    throw InputError("generator magnitude bounds must be positive");
  }
  if (max_denominator < 1) {
    throw InputError("generator denominator bound must be at least 1");
  }
  if (max_value * max_denominator < 1 || max_size * max_denominator < 1) {
    throw InputError("generator bounds leave no representable positive value");
  }
  if (capacity_rule.kind == CapacityRule::Kind::Fixed) {
    if (capacity_rule.amount <= 0) {
      throw InputError("fixed capacity must be positive");
    }
  } else {
    if (capacity_rule.amount <= 0 || capacity_rule.amount > 1) {
      throw InputError("capacity fraction must lie in (0, 1]");
    }
    if (min_items < 2) {
      throw InputError("fractional capacity needs at least two items per instance");
    }
  }
  if (kind == GeneratorKind::TieHeavy && tie_pool < 1) {
    throw InputError("tie pool must be at least 1");
  }
  if ((kind == GeneratorKind::ProbeDet || kind == GeneratorKind::ProbeRand) && fib_index < 2) {
    throw InputError("probe families need a Fibonacci index of at least 2");
  }
}

Instance generate(const GeneratorSpec& spec, std::uint64_t index) {
  spec.validate();
  switch (spec.kind) {
    case GeneratorKind::GeneralRandom:
    case GeneratorKind::UnitDensityRandom:
    case GeneratorKind::TieHeavy:
      return generate_random(spec, index);
    case GeneratorKind::Named: {
      const std::vector<std::string>& names = catalog_names();
      return catalog_instance(names[index % names.size()]);
    }
    case GeneratorKind::ProbeDet: {
      auto pair = probe_pair_det(spec.fib_index, spec.epsilon);
      return index % 2 == 0 ? pair.first : pair.second;
    }
    case GeneratorKind::ProbeRand: {
      auto pair = probe_pair_rand(spec.fib_index);
      return index % 2 == 0 ? pair.first : pair.second;
    }
  }
  throw Error("unhandled generator kind");
}

std::string instance_label(const GeneratorSpec& spec, std::uint64_t index) {
  if (spec.kind == GeneratorKind::Named) {
    const std::vector<std::string>& names = catalog_names();
    return names[index % names.size()];
  }
  std::string out(to_string(spec.kind));
  out += ":";
  out += std::to_string(spec.seed);
  out += ":";
  out += std::to_string(index);
  return out;
}

}  // namespace mechlab
