#include "polyinv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace polyinv {

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();  // mpq_class(num, den) does not reduce on its own
  return q;
}

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && text[i] == '-') { neg = true; ++i; }
  std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) throw std::invalid_argument("malformed rational '" + text + "'");
  Integer num(text.substr(num_start, i - num_start));
  Integer den(1);
  if (i < text.size()) {
    if (text[i] != '/') throw std::invalid_argument("malformed rational '" + text + "'");
    ++i;
    std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size())
      throw std::invalid_argument("malformed rational '" + text + "'");
    den = Integer(text.substr(den_start));
    if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator: '" + text + "'");
  }
  if (neg) num = -num;
  return make_rational(num, den);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_pow(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(q.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(q.get_mpq_t()), e);
  return r;
}

}  // namespace polyinv
