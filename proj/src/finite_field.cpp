#include "derange/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace derange {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> decode(std::uint32_t code, std::uint32_t p, std::uint32_t f) {
  std::vector<std::uint32_t> c(f);
  for (std::uint32_t i = 0; i < f; ++i) {
    c[i] = code % p;
    code /= p;
  }
  return c;
}

std::uint32_t encode(const std::vector<std::uint32_t>& c, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
  return code;
}

}  // namespace

FieldElement::FieldElement(const FiniteField& field, std::uint32_t code) : field_(&field), code_(code) {
  if (code >= field.order()) throw std::out_of_range("field element code out of range");
}

std::vector<std::uint32_t> FieldElement::coeffs() const {
  return decode(code_, field_->characteristic(), field_->degree());
}

FieldElement FieldElement::operator+(const FieldElement& o) const { return {*field_, field_->add(code_, o.code_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {*field_, field_->add(code_, field_->neg(o.code_))};
}
FieldElement FieldElement::operator-() const { return {*field_, field_->neg(code_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { return {*field_, field_->mul(code_, o.code_)}; }
FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }
FieldElement FieldElement::inverse() const { return {*field_, field_->inv(code_)}; }

FieldElement FieldElement::pow(std::int64_t e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  auto n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  FieldElement r = field_->one();
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

std::uint64_t FieldElement::multiplicative_order() const {
  if (is_zero()) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t k = 1;
  for (FieldElement x = *this; !(x == field_->one()); x = x * *this) ++k;
  return k;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t f, std::vector<std::uint32_t> modulus)
    : p_(p), f_(f), q_(1), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (f == 0 || modulus_.size() != f + 1 || modulus_.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree f");
  for (std::uint32_t i = 0; i < f; ++i) q_ *= p;

  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    const auto ca = decode(a, p, f);
    std::vector<std::uint32_t> n(f);
    for (std::uint32_t i = 0; i < f; ++i) n[i] = (p - ca[i]) % p;
    neg_[a] = encode(n, p);
    for (std::uint32_t b = 0; b < q_; ++b) {
      const auto cb = decode(b, p, f);
      std::vector<std::uint32_t> s(f);
      for (std::uint32_t i = 0; i < f; ++i) s[i] = (ca[i] + cb[i]) % p;
      add_[a * q_ + b] = encode(s, p);

      std::vector<std::uint32_t> prod(2 * f - 1, 0);
      for (std::uint32_t i = 0; i < f; ++i)
        for (std::uint32_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      // Reduce modulo the monic modulus, highest degree first.
      for (std::size_t d = prod.size(); d-- > f;) {
        const std::uint32_t lead = prod[d];
        if (lead == 0) continue;
        for (std::uint32_t i = 0; i <= f; ++i)
          prod[d - f + i] = (prod[d - f + i] + (p - lead) * modulus_[i]) % p;
      }
      prod.resize(f);
      mul_[a * q_ + b] = encode(prod, p);
    }
  }
  // A reducible modulus yields zero divisors.
  inv_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) {
    for (std::uint32_t b = 1; b < q_; ++b) {
      if (mul_[a * q_ + b] == 0) throw std::invalid_argument("modulus is reducible");
      if (mul_[a * q_ + b] == 1) inv_[a] = b;
    }
  }
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("division by zero in GF(" + std::to_string(q_) + ")");
  return inv_[a];
}

FieldElement FiniteField::element(std::uint32_t code) const { return {*this, code}; }

FieldElement FiniteField::primitive_element() const {
  for (std::uint32_t c = 1; c < q_; ++c) {
    FieldElement x(*this, c);
    if (x.multiplicative_order() == q_ - 1) return x;
  }
  throw std::logic_error("no primitive element");
}

std::vector<FieldElement> FiniteField::elements() const {
  std::vector<FieldElement> out;
  for (std::uint32_t c = 0; c < q_; ++c) out.emplace_back(*this, c);
  return out;
}

std::vector<std::uint32_t> FiniteField::builtin_orders() {
  return {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 27};
}

const FiniteField& FiniteField::builtin(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<FiniteField>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(q); it != cache.end()) return *it->second;
  std::unique_ptr<FiniteField> f;
  switch (q) {
    case 4: f = std::make_unique<FiniteField>(2, 2, std::vector<std::uint32_t>{1, 1, 1}); break;
    case 8: f = std::make_unique<FiniteField>(2, 3, std::vector<std::uint32_t>{1, 1, 0, 1}); break;
    case 16: f = std::make_unique<FiniteField>(2, 4, std::vector<std::uint32_t>{1, 1, 0, 0, 1}); break;
    case 9: f = std::make_unique<FiniteField>(3, 2, std::vector<std::uint32_t>{1, 0, 1}); break;
    case 25: f = std::make_unique<FiniteField>(5, 2, std::vector<std::uint32_t>{3, 0, 1}); break;
    case 27: f = std::make_unique<FiniteField>(3, 3, std::vector<std::uint32_t>{1, 2, 0, 1}); break;
    case 2: case 3: case 5: case 7: case 11: case 13: case 17: case 19:
      f = std::make_unique<FiniteField>(q, 1, std::vector<std::uint32_t>{0, 1});
      break;
    default: throw std::invalid_argument("no built-in field of order " + std::to_string(q));
  }
  return *cache.emplace(q, std::move(f)).first->second;
}

}  // namespace derange
