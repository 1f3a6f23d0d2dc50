#include "adelic/rational.hpp"

#include <cctype>

#include "adelic/error.hpp"

namespace adelic {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    fail(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer integer_power(std::uint64_t p, unsigned long e) {
  Integer result;
  Integer base;
  mpz_import(base.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), e);
  return result;
}

Rational prime_power(std::uint64_t p, long e) {
  if (e >= 0) return Rational(integer_power(p, static_cast<unsigned long>(e)));
  return Rational(Integer(1), integer_power(p, static_cast<unsigned long>(-e)));
}

Integer height(const Rational& q) {
  Integer num = abs(q.get_num());
  return num > q.get_den() ? num : Integer(q.get_den());
}

int sign(const Rational& q) { return sgn(q); }

}  // namespace adelic
