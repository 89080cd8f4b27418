#include "fnr/rational.hpp"

#include <cctype>

#include "fnr/errors.hpp"

namespace fnr {

Rational::Rational(long num, long den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero");
  value_ /= o.value_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_str();
}

std::string Rational::to_fraction_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

}  // namespace fnr
