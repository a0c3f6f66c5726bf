#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace derange {

class FiniteField;

/// Element of GF(p^f), stored as the base-p code of its coefficient vector.
class FieldElement {
 public:
  FieldElement(const FiniteField& field, std::uint32_t code);

  const FiniteField& field() const { return *field_; }
  std::uint32_t code() const { return code_; }
  /// Coefficients over GF(p) in the polynomial basis, constant term first; length f.
  std::vector<std::uint32_t> coeffs() const;
  bool is_zero() const { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  /// Throws std::domain_error on division by zero.
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(std::int64_t e) const;
  std::uint64_t multiplicative_order() const;

  bool operator==(const FieldElement& o) const { return field_ == o.field_ && code_ == o.code_; }

 private:
  const FiniteField* field_;
  std::uint32_t code_;
};

/**
 * GF(p^f) with full addition and multiplication tables.
 *
 * Built-in fields use fixed irreducible polynomials (constant term first):
 *   GF(4):  x^2 + x + 1      GF(8):  x^3 + x + 1     GF(16): x^4 + x + 1
 *   GF(9):  x^2 + 1          GF(25): x^2 + 3         GF(27): x^3 + 2x + 1
 * and GF(p) for the primes 2, 3, 5, 7, 11, 13, 17, 19.
 */
class FiniteField {
 public:
  /// `modulus` is monic of degree f, constant term first. Throws
  /// std::invalid_argument when p is not prime or the modulus is reducible.
  FiniteField(std::uint32_t p, std::uint32_t f, std::vector<std::uint32_t> modulus);

  /// The built-in field of order q. Throws std::invalid_argument otherwise.
  static const FiniteField& builtin(std::uint32_t q);
  static std::vector<std::uint32_t> builtin_orders();

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return f_; }
  std::uint32_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return {*this, 0}; }
  FieldElement one() const { return {*this, 1}; }
  FieldElement element(std::uint32_t code) const;
  /// The primitive element with the smallest code.
  FieldElement primitive_element() const;
  std::vector<FieldElement> elements() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t p_, f_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

}  // namespace derange
