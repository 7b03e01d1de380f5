#include "polylab/rational.hpp"

#include "polylab/field.hpp"

namespace polylab {

namespace {
BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw PreconditionError("empty number");
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) throw PreconditionError("malformed number");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw PreconditionError("malformed number: " + std::string(s));
  BigInt v(std::string(s.substr(i)));
  return s[0] == '-' ? BigInt(-v) : v;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}
}  // namespace

Rational parse_rational(std::string_view text) {
  text = strip(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(strip(text.substr(0, slash)));
    const BigInt den = parse_integer(strip(text.substr(slash + 1)));
    if (den == 0) throw PreconditionError("zero denominator");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    std::string digits(int_part);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    digits += frac;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    BigInt num = parse_integer(digits);
    return Rational(num, den);
  }
  return Rational(parse_integer(text));
}

std::string format_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace polylab
