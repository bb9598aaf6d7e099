#include "lef/scalar.hpp"

#include "lef/errors.hpp"

#include <cctype>

namespace lef {

std::string to_string(const Scalar& s) {
  const Integer num = boost::multiprecision::numerator(s);
  const Integer den = boost::multiprecision::denominator(s);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text))
    throw ParseError("malformed scalar \"" + std::string(text) + "\"");
  Integer num{std::string(num_text)};
  Integer den{std::string(den_text)};
  if (den == 0) throw ParseError("zero denominator in scalar \"" + std::string(text) + "\"");
  Scalar value(num, den);
  return negative ? Scalar(-value) : value;
}

}  // namespace lef
