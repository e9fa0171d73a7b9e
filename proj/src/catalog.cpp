#include "mechlab/catalog.hpp"

#include "mechlab/errors.hpp"

#include <string>

namespace mechlab {

namespace {

Item ud(int id, int owner, Rational value) {
  Rational size = value;
  return Item(id, owner, std::move(value), std::move(size));
}

Instance build_figure1() {
  std::vector<Item> items;
  items.emplace_back(0, 0, 10, 1);
  items.emplace_back(1, 1, 25, 3);
  items.emplace_back(2, 2, 20, 3);
  items.emplace_back(3, 0, 6, 1);
  items.emplace_back(4, 2, 15, 3);
  items.emplace_back(5, 2, 8, 2);
  items.emplace_back(6, 1, 5, 5);
  return Instance(10, 3, std::move(items));
}

Instance build_intro_funding() {
  std::vector<Item> items;
  items.push_back(ud(0, 0, Rational(1, 2)));
  items.push_back(ud(1, 0, Rational(2, 3)));
  items.push_back(ud(2, 1, Rational(1, 2)));
  return Instance(1, 2, std::move(items));
}

Instance build_fig3a() {
  std::vector<Item> items;
  items.push_back(ud(0, 0, 6));
  items.push_back(ud(1, 1, Rational(51, 10)));
  items.push_back(ud(2, 1, 5));
  items.push_back(ud(3, 0, Rational(9, 2)));
  items.push_back(ud(4, 2, Rational(31, 10)));
  items.push_back(ud(5, 2, 3));
  items.push_back(ud(6, 3, 2));
  items.push_back(ud(7, 1, 1));
  return Instance(10, 4, std::move(items));
}

Instance build_fig3b() {
  std::vector<Item> items;
  items.push_back(ud(0, 0, 6));
  items.push_back(ud(1, 1, Rational(11, 2)));
  items.push_back(ud(2, 0, Rational(24, 5)));
  items.push_back(ud(3, 2, 4));
  items.push_back(ud(4, 3, Rational(7, 2)));
  items.push_back(ud(5, 3, 2));
  return Instance(10, 4, std::move(items));
}

Instance build_fig3c() {
  std::vector<Item> items;
  items.push_back(ud(0, 0, 6));
  items.push_back(ud(1, 1, Rational(51, 10)));
  items.push_back(ud(2, 0, Rational(21, 5)));
  items.push_back(ud(3, 2, Rational(7, 2)));
  items.push_back(ud(4, 2, Rational(5, 2)));
  items.push_back(ud(5, 1, 1));
  return Instance(10, 3, std::move(items));
}

Instance build_fig3d() {
  std::vector<Item> items;
  items.push_back(ud(0, 0, 6));
  items.push_back(ud(1, 1, Rational(11, 2)));
  items.push_back(ud(2, 1, Rational(24, 5)));
  items.push_back(ud(3, 0, Rational(21, 5)));
  items.push_back(ud(4, 2, 4));
  items.push_back(ud(5, 2, 2));
  return Instance(10, 3, std::move(items));
}

Instance build_fig4_left() {
  std::vector<Item> items;
  items.push_back(ud(0, 0, 6));
  items.push_back(ud(1, 0, Rational(11, 2)));
  items.push_back(ud(2, 1, 5));
  items.push_back(ud(3, 2, 4));
  items.push_back(ud(4, 2, Rational(5, 2)));
  items.push_back(ud(5, 1, 1));
  return Instance(10, 3, std::move(items));
}

Instance build_fig4_right() {
  std::vector<Item> items;
  items.push_back(ud(0, 0, Rational(13, 2)));
  items.push_back(ud(1, 1, 4));
  items.push_back(ud(2, 2, 1));
  return Instance(10, 3, std::move(items));
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "figure1", "intro_funding", "fig3a", "fig3b", "fig3c", "fig3d", "fig4_left", "fig4_right"};
  return names;
}

Instance catalog_instance(std::string_view name) {
  if (name == "figure1") return build_figure1();
  if (name == "intro_funding") return build_intro_funding();
  if (name == "fig3a") return build_fig3a();
  if (name == "fig3b") return build_fig3b();
  if (name == "fig3c") return build_fig3c();
  if (name == "fig3d") return build_fig3d();
  if (name == "fig4_left") return build_fig4_left();
  if (name == "fig4_right") return build_fig4_right();
  throw InputError("unknown catalog instance '" + std::string(name) + "'");
}

BigInt fibonacci(int k) {
  if (k < 1) {
    throw InputError("Fibonacci index must be at least 1");
  }
  BigInt a = 1, b = 1;  // F(1), F(2)
  for (int i = 3; i <= k; ++i) {
    const BigInt next = a + b;
    a = b;
    b = next;
  }
  return k == 1 ? a : b;
}

Rational golden_ratio_approx(int k) {
  if (k < 1) {
    throw InputError("Fibonacci index must be at least 1");
  }
  return Rational(fibonacci(k + 1), fibonacci(k));
}

std::pair<Instance, Instance> probe_pair_det(int fib_index, const Rational& epsilon) {
  if (fib_index < 2) {
    throw InputError("probe families need a Fibonacci index of at least 2");
  }
  const Rational phi = golden_ratio_approx(fib_index);
  if (epsilon <= 0 || epsilon >= phi - 1) {
    throw InputError("probe offset must lie strictly between 0 and " +
                     format_rational(phi - 1) + ", got " + format_rational(epsilon));
  }
  const Rational capacity = phi + 1 - epsilon;
  std::vector<Item> items;
  items.push_back(ud(0, 0, phi));
  items.push_back(ud(1, 0, phi - epsilon));
  items.push_back(ud(2, 1, 1));
  Instance full(capacity, 2, std::move(items));
  const int drop[] = {1};
  Instance reduced = full.without(drop);
  return {std::move(full), std::move(reduced)};
}

std::pair<Instance, Instance> probe_pair_rand(int fib_index) {
  if (fib_index < 2) {
    throw InputError("probe families need a Fibonacci index of at least 2");
  }
  const Rational phi = golden_ratio_approx(fib_index);
  std::vector<Item> items;
  items.push_back(ud(0, 0, phi));
  items.push_back(ud(1, 0, 1));
  items.push_back(ud(2, 1, 1));
  Instance full(2, 2, std::move(items));
  const int drop[] = {1};
  Instance reduced = full.without(drop);
  return {std::move(full), std::move(reduced)};
}

}  // namespace mechlab
