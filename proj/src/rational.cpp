#include "revpref/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace revpref {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto fail = [&] {
    throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
  };

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) fail();
    value = Rational(n, d);
  } else if (auto point = s.find('.'); point != std::string_view::npos) {
    std::string_view whole = s.substr(0, point);
    std::string_view frac = s.substr(point + 1);
    if (whole.empty() && frac.empty()) fail();
    if (!whole.empty() && !all_digits(whole)) fail();
    if (!frac.empty() && !all_digits(frac)) fail();
    mpz_class n(std::string(whole) + std::string(frac), 10);
    mpz_class d = 1;
    for (size_t i = 0; i < frac.size(); ++i) d *= 10;
    value = Rational(n, d);
  } else {
    if (!all_digits(s)) fail();
    value = Rational(mpz_class(std::string(s), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_fraction(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot product dimension mismatch");
  Rational sum = 0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace revpref
