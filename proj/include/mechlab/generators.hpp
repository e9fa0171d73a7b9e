#pragma once

#include "mechlab/instance.hpp"

#include <cstdint>
#include <string>

namespace mechlab {

enum class GeneratorKind {
  GeneralRandom,
  UnitDensityRandom,
  TieHeavy,
  Named,     // cycles through the named catalog
  ProbeDet,  // alternates the two halves of the deterministic probe pair
  ProbeRand, // alternates the two halves of the randomized probe pair
};

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view token);

struct CapacityRule {
  enum class Kind { Fixed, FractionOfTotalSize };
  Kind kind = Kind::Fixed;
  Rational amount = 10;  // the capacity itself, or the fraction of total size
};

/// A deterministic instance family: (spec, index) always yields the same
/// instance, independent of call order.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::GeneralRandom;
  int min_items = 1;
  int max_items = 7;
  int min_agents = 1;
  int max_agents = 3;
  Rational max_value = 8;
  Rational max_size = 8;
  unsigned max_denominator = 64;
  CapacityRule capacity_rule;
  std::uint64_t seed = 0;
  int tie_pool = 3;     // TieHeavy: distinct values to draw from
  int fib_index = 16;   // probe kinds
  Rational epsilon{1, 1000};  // ProbeDet

  void validate() const;
};

Instance generate(const GeneratorSpec& spec, std::uint64_t index);
std::string instance_label(const GeneratorSpec& spec, std::uint64_t index);

}  // namespace mechlab
