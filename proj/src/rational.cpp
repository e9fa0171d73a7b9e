#include "mechlab/rational.hpp"

#include "mechlab/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace mechlab {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw InputError("bad rational '" + std::string(whole) + "': empty integer part");
  }
  std::size_t start = text.front() == '-' ? 1 : 0;
  if (start == text.size()) {
    throw InputError("bad rational '" + std::string(whole) + "': sign without digits");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw InputError("bad rational '" + std::string(whole) + "': unexpected character '" +
                       std::string(1, text[i]) + "'");
    }
  }
  return BigInt(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  if (text.find('/', slash + 1) != std::string_view::npos) {
    throw InputError("bad rational '" + std::string(text) + "': more than one '/'");
  }
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw InputError("bad rational '" + std::string(text) + "': zero denominator");
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  std::string out = numerator(value).str();
  if (denominator(value) != 1) {
    out += "/";
    out += denominator(value).str();
  }
  return out;
}

double approx_double(const Rational& value) { return value.convert_to<double>(); }

BigInt floor_to_int(const Rational& value) {
  BigInt quotient = numerator(value) / denominator(value);
  if (value < 0 && quotient * denominator(value) != numerator(value)) {
    --quotient;
  }
  return quotient;
}

}  // namespace mechlab
