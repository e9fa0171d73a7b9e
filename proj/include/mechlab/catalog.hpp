#pragma once

#include "mechlab/instance.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace mechlab {

/// Named reference instances used across tests, docs, and the CLI
/// (--catalog). Names: figure1, intro_funding, fig3a, fig3b, fig3c, fig3d,
/// fig4_left, fig4_right.
Instance catalog_instance(std::string_view name);
const std::vector<std::string>& catalog_names();

/// F(1) = F(2) = 1.
BigInt fibonacci(int k);

/// F(k+1) / F(k), the canonical rational stand-in for the golden ratio.
/// Satisfies |phi^2 - phi - 1| = 1 / F(k)^2.
Rational golden_ratio_approx(int k);

/// Two-agent pair (full, reduced) probing how much a deterministic mechanism
/// can guarantee: the full instance packs exactly to capacity, the reduced
/// one (second item withheld) leaves only the big item. epsilon must lie in
/// (0, phi - 1).
std::pair<Instance, Instance> probe_pair_det(int fib_index, const Rational& epsilon);

/// Two-agent pair (full, reduced) probing lotteries; the reduced instance
/// withholds the smaller item of agent 0. Carries a deliberate value tie.
std::pair<Instance, Instance> probe_pair_rand(int fib_index);

}  // namespace mechlab
