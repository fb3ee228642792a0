#include "relcheck/rational.hpp"

#include <stdexcept>

namespace relcheck {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  bool slash = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '/') {
      if (slash || i == start || i + 1 == text.size()) throw std::invalid_argument("bad rational: " + text);
      slash = true;
    } else if (ch < '0' || ch > '9') {
      throw std::invalid_argument("bad rational: " + text);
    }
  }
  if (start == text.size()) throw std::invalid_argument("bad rational: " + text);
  Rational q;
  std::string body = text[0] == '+' ? text.substr(1) : text;
  if (q.set_str(body, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

namespace {
std::optional<Integer> exact_integer_root(const Integer& n, unsigned k) {
  if (n < 0) return std::nullopt;
  Integer r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}
}  // namespace

std::optional<Rational> exact_root(const Rational& value, unsigned k) {
  if (k == 0) return std::nullopt;
  if (k == 1) return value;
  auto num = exact_integer_root(value.get_num(), k);
  auto den = exact_integer_root(value.get_den(), k);
  if (!num || !den) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

}  // namespace relcheck
