#include "derange/cyclotomic.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>

#include "derange/errors.hpp"

namespace derange {

namespace {

// Exact division of integer polynomials (divisor monic), constant term first.
std::vector<BigInt> divide_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<BigInt> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt lead = num[i];
    if (lead == 0) continue;
    q[i - dn] = lead;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= lead * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("inexact polynomial division");
  return q;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
  std::vector<BigInt> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(std::move(p), cyclotomic_polynomial(d));
  return p;
}

CyclotomicField::CyclotomicField(std::uint32_t m) : m_(m), phi_(derange::cyclotomic_polynomial(m)) {
  const std::size_t dim = dimension();
  powers_.assign(m, std::vector<BigInt>(dim, 0));
  std::vector<BigInt> cur(dim, 0);
  cur[0] = 1;
  for (std::uint32_t k = 0; k < m; ++k) {
    powers_[k] = cur;
    // Multiply by x and reduce using x^dim = -(phi_0 + ... + phi_{dim-1} x^{dim-1}).
    std::vector<BigInt> next(dim, 0);
    const BigInt top = cur[dim - 1];
    for (std::size_t i = dim - 1; i > 0; --i) next[i] = cur[i - 1];
    for (std::size_t i = 0; i < dim; ++i) next[i] -= top * phi_[i];
    cur = std::move(next);
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(std::uint32_t m) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const CyclotomicField>> cache;
  if (m == 0) throw std::invalid_argument("conductor must be positive");
  std::lock_guard lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_shared<const CyclotomicField>(m);
  return slot;
}

const std::vector<BigInt>& CyclotomicField::power(std::int64_t k) const {
  const auto m = static_cast<std::int64_t>(m_);
  return powers_[static_cast<std::size_t>(((k % m) + m) % m)];
}

Cyclotomic::Cyclotomic() : Cyclotomic(CyclotomicField::get(1), Rational(0)) {}

Cyclotomic::Cyclotomic(std::shared_ptr<const CyclotomicField> field, const Rational& r)
    : field_(std::move(field)), c_(field_->dimension(), Rational(0)) {
  c_[0] = r;
}

Cyclotomic::Cyclotomic(std::uint32_t m, const Rational& r) : Cyclotomic(CyclotomicField::get(m), r) {}

Cyclotomic::Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> c)
    : field_(std::move(field)), c_(std::move(c)) {}

Cyclotomic Cyclotomic::zeta(std::uint32_t m, std::int64_t k) {
  auto f = CyclotomicField::get(m);
  const auto& p = f->power(k);
  std::vector<Rational> c(p.begin(), p.end());
  return Cyclotomic(std::move(f), std::move(c));
}

void Cyclotomic::check_same(const Cyclotomic& o) const {
  if (conductor() != o.conductor())
    throw std::invalid_argument("conductor mismatch: " + std::to_string(conductor()) + " vs " +
                                std::to_string(o.conductor()));
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::to_rational() const {
  if (!is_rational()) throw std::domain_error("cyclotomic value " + to_string() + " is not rational");
  return c_[0];
}

bool Cyclotomic::is_integer() const { return is_rational() && c_[0].get_den() == 1; }

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  Cyclotomic r = *this;
  r += o;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
  std::vector<Rational> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return Cyclotomic(field_, std::move(c));
}

Cyclotomic Cyclotomic::operator*(const Rational& r) const {
  std::vector<Rational> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * r;
  return Cyclotomic(field_, std::move(c));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  check_same(o);
  const std::size_t dim = c_.size();
  std::vector<Rational> full(2 * dim - 1, Rational(0));
  for (std::size_t i = 0; i < dim; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j)
      if (o.c_[j] != 0) full[i + j] += c_[i] * o.c_[j];
  }
  std::vector<Rational> c(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(dim));
  for (std::size_t k = dim; k < full.size(); ++k) {
    if (full[k] == 0) continue;
    const auto& p = field_->power(static_cast<std::int64_t>(k));
    for (std::size_t i = 0; i < dim; ++i)
      if (p[i] != 0) c[i] += full[k] * Rational(p[i]);
  }
  return Cyclotomic(field_, std::move(c));
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

Cyclotomic Cyclotomic::pow(unsigned e) const {
  Cyclotomic r(field_, Rational(1));
  Cyclotomic b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Rational> c(c_.size(), Rational(0));
  const auto m = static_cast<std::int64_t>(conductor());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& p = field_->power(m - static_cast<std::int64_t>(i));
    for (std::size_t j = 0; j < c.size(); ++j)
      if (p[j] != 0) c[j] += c_[i] * Rational(p[j]);
  }
  return Cyclotomic(field_, std::move(c));
}

Rational Cyclotomic::l1_norm() const {
  Rational s = 0;
  for (const auto& x : c_) s += abs(x);
  return s;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return conductor() == o.conductor() && c_ == o.c_; }

std::string Cyclotomic::to_string() const {
  std::string out;
  const std::string e = "E(" + std::to_string(conductor()) + ")";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const bool neg = c_[i] < 0;
    const Rational a = abs(c_[i]);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string coeff = a.get_den() == 1 ? a.get_num().get_str() : a.get_num().get_str() + "/" + a.get_den().get_str();
    if (i == 0) {
      out += coeff;
      continue;
    }
    if (a != 1) out += coeff + "*";
    out += e;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

namespace {

class EntryParser {
 public:
  EntryParser(std::string text, std::uint32_t m) : s_(std::move(text)), m_(m) {}

  Cyclotomic parse() {
    Cyclotomic v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("entry \"" + s_ + "\": " + what + " at offset " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  BigInt integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    return BigInt(s_.substr(start, i_ - start));
  }

  Cyclotomic expr() {
    Cyclotomic v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v += -term();
      else
        return v;
    }
  }
  Cyclotomic term() {
    Cyclotomic v = factor();
    while (eat('*')) v *= factor();
    return v;
  }
  Cyclotomic factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    Cyclotomic v = primary();
    if (eat('^')) {
      const BigInt e = integer();
      if (!e.fits_uint_p()) fail("exponent too large");
      v = v.pow(static_cast<unsigned>(e.get_ui()));
    }
    return v;
  }
  Cyclotomic primary() {
    skip();
    if (eat('(')) {
      Cyclotomic v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (i_ < s_.size() && s_[i_] == 'E') {
      ++i_;
      if (!eat('(')) fail("expected '(' after E");
      const BigInt n = integer();
      if (!eat(')')) fail("expected ')'");
      if (n <= 0 || !n.fits_uint_p() || m_ % n.get_ui() != 0)
        fail("E(" + n.get_str() + ") does not divide the conductor " + std::to_string(m_));
      return Cyclotomic::zeta(m_, static_cast<std::int64_t>(m_ / n.get_ui()));
    }
    BigInt num = integer();
    BigInt den = 1;
    // A literal fraction "p/q" binds tighter than anything else.
    if (eat('/')) den = integer();
    if (den == 0) fail("zero denominator");
    return Cyclotomic(m_, make_rational(num, den));
  }

  std::string s_;
  std::uint32_t m_;
  std::size_t i_ = 0;
};

std::string normalise_minus(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.substr(i, 3) == "\xE2\x88\x92") {
      out += '-';
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

}  // namespace

Cyclotomic Cyclotomic::parse(std::string_view text, std::uint32_t m) {
  if (m == 0) throw ParseError("conductor must be positive");
  return EntryParser(normalise_minus(text), m).parse();
}

}  // namespace derange
