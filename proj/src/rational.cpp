#include "derange/rational.hpp"

#include <limits>
#include <stdexcept>

namespace derange {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t");
    const auto e = t.find_last_not_of(" \t");
    t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  BigInt num, den = 1;
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      num = BigInt(s);
    } else {
      std::string n = s.substr(0, slash), d = s.substr(slash + 1);
      trim(n);
      trim(d);
      num = BigInt(n);
      den = BigInt(d);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal '" + s + "'");
  }
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return make_rational(num, den);
}

std::string to_decimal_string(const Rational& r, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Rational scaled = abs(r) * scale;
  const BigInt rounded = nearest_integer(scaled);
  std::string body = rounded.get_str();
  if (static_cast<int>(body.size()) <= digits)
    body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  std::string out = body.substr(0, body.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + body.substr(body.size() - static_cast<std::size_t>(digits));
  if (r < 0 && rounded != 0) out.insert(0, "-");
  return out;
}

BigInt nearest_integer(const Rational& r) {
  const Rational shifted = r + Rational(1, 2);
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return q;
}

BigInt factorial(unsigned n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0) throw std::overflow_error("negative value does not fit uint64");
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  if (!mpz_fits_ulong_p(v.get_mpz_t())) throw std::overflow_error("value " + v.get_str() + " does not fit uint64");
  return mpz_get_ui(v.get_mpz_t());
}

BigInt from_u64(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t g = gcd_u64(a, b);
  const std::uint64_t q = a / g;
  if (q > std::numeric_limits<std::uint64_t>::max() / b) throw std::overflow_error("lcm overflows uint64");
  return q * b;
}

}  // namespace derange
