#include "towerlab/exact.hpp"

#include <limits>
#include <stdexcept>

namespace towerlab {

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

namespace {

bool is_integer_text(std::string_view t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view t) {
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
  return t;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  text = trim(text);
  if (!is_integer_text(text)) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  if (text[0] == '+') text.remove_prefix(1);
  return BigInt(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("floor_div by zero");
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("ceil_div by zero");
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

BigInt ceil(const Rational& v) { return ceil_div(v.get_num(), v.get_den()); }
BigInt floor(const Rational& v) { return floor_div(v.get_num(), v.get_den()); }

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow(const Rational& base, unsigned long exp) {
  Rational r(pow(base.get_num(), exp), pow(base.get_den(), exp));
  r.canonicalize();
  return r;
}

unsigned long two_adic_valuation(const BigInt& n) {
  if (n <= 0) throw std::domain_error("2-adic valuation needs a positive integer");
  return mpz_scan1(n.get_mpz_t(), 0);
}

std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + to_string(v));
  return v.get_si();
}

std::string join(const std::vector<BigInt>& values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += to_string(values[i]);
  }
  return out;
}

}  // namespace towerlab
